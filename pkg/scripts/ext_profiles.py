"""Ext dimensions between the simple Cl_0(q)-modules and the periodicity of
their minimal resolutions, for <1^r, 0> with r = 1..6."""

import argparse

from spinorlab.modext import clifford_simples, ext_dims, projective_resolution
from spinorlab.qspace import diagonal_form


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=6)
    parser.add_argument("--max-degree", type=int, default=8)
    args = parser.parse_args()
    n = args.max_degree
    for r in range(1, args.max_rank + 1):
        q = diagonal_form([1] * r + [0])
        simples = clifford_simples(q)
        print(f"form {q}")
        for a, Sa in simples.items():
            period = projective_resolution(Sa, n).periodicity
            for b, Sb in simples.items():
                print(f"  Ext^0..{n}({a},{b}) = {ext_dims(Sa, Sb, n).dims}")
            print(f"  resolution of {a}: period {period[1] if period else None}")


if __name__ == "__main__":
    main()
