"""Summands, generic fiber rank and node fiber rank of S^W on the nodal quadric
x1^2 + x2^2 + x3^2 + x4^2 = 0 in P^4, for every standard isotropic W."""

import argparse

from spinorlab.qspace import diagonal_form, standard_family
from spinorlab.spinor import classify, fiber_rank, matrix_factorization, quadric_points


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--form", default="1,1,1,1,0")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    q = diagonal_form([int(x) for x in args.form.split(",")])
    kernel_points = [[0] * (q.dim - 1) + [1]] if q.corank else []
    point = quadric_points(q, 1, args.seed)[0]
    print(f"form {q}")
    print(f"{'W':<18}{'M':>4}{'generic':>9}{'node':>6}  summands")
    for label, W in standard_family(q):
        mf = matrix_factorization(q, W)
        node = fiber_rank(mf, kernel_points[0]) if kernel_points else "-"
        print(f"{label:<18}{mf.size:>4}{fiber_rank(mf, point):>9}{node!s:>6}  {classify(q, W, args.seed)}")


if __name__ == "__main__":
    main()
