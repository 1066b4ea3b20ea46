"""Cohomology tables of the twists S^W(l) for maximal W on the quadrics
<1^N> and <1^{N-1}, 0>, N = 4..6."""

import argparse

from spinorlab.qspace import diagonal_form
from spinorlab.spinor import cohomology_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lo", type=int, default=-4)
    parser.add_argument("--hi", type=int, default=4)
    args = parser.parse_args()
    for N in (4, 5, 6):
        for corank in (0, 1):
            q = diagonal_form([1] * (N - corank) + [0] * corank)
            table = cohomology_table(q, "max", range(args.lo, args.hi + 1))
            print(f"form {q}, Euler identity {'holds' if all(table.euler_ok) else 'FAILS'}")
            print(table.render())
            print()


if __name__ == "__main__":
    main()
