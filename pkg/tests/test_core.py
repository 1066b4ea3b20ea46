from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinorlab.core import (
    ONE,
    ZERO,
    ExactMatrix,
    GaussianRational,
    I,
    Subspace,
    certified_rank,
    format_scalar,
    gq,
    kernel_basis,
    left_inverse,
    parse_scalar,
    rank,
    rref,
    solve,
    sparse_kernel,
)

from strategies import matrices, scalars


# --- scalars -----------------------------------------------------------------


def test_i_squared_is_minus_one():
    assert I * I == -ONE


def test_scalar_parts_and_normalization():
    x = GaussianRational(Fraction(2, 4), Fraction(-6, 8))
    assert x.re == Fraction(1, 2) and x.im == Fraction(-3, 4)
    assert x == gq(Fraction(1, 2), Fraction(-3, 4))


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@given(scalars)
def test_conjugate_and_norm(a):
    assert a * a.conjugate() == gq(a.norm())


@given(scalars)
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@pytest.mark.parametrize(
    "value, text",
    [(gq(0), "0"), (gq(Fraction(-3, 2)), "-3/2"), (I, "1*i"), (-I, "-1*i"), (gq(1, Fraction(-1, 3)), "1-1/3*i")],
)
def test_format_examples(value, text):
    assert format_scalar(value) == text


@pytest.mark.parametrize("text", ["", "1/", "x", "1*i*i", "1+"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_parse_accepts_short_forms():
    assert parse_scalar("i") == I
    assert parse_scalar("-i") == -I
    assert parse_scalar("2i") == gq(0, 2)


# --- linear algebra ----------------------------------------------------------


@given(matrices(3, 4))
def test_rank_nullity(rows):
    A = ExactMatrix(rows)
    K = kernel_basis(A)
    assert rank(A) + len(K) == 4
    for v in K:
        assert not any(A.apply(v))


@given(matrices(4, 3))
def test_certified_rank_agrees_with_elimination(rows):
    assert certified_rank(rows) == rank(rows)


@given(matrices(3, 3), st.lists(scalars, min_size=3, max_size=3))
def test_solve_consistent_systems(rows, x):
    A = ExactMatrix(rows)
    b = A.apply(x)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


def test_solve_inconsistent_returns_none():
    A = ExactMatrix([[ONE, ZERO], [ONE, ZERO]])
    assert solve(A, [ONE, ZERO]) is None


@given(matrices(3, 3))
def test_inverse_when_invertible(rows):
    A = ExactMatrix(rows)
    if rank(A) == 3:
        assert A @ A.inverse() == ExactMatrix.identity(3)


def test_rref_pivots():
    R, piv = rref([[gq(0), gq(2), gq(4)], [gq(1), gq(1), gq(1)]])
    assert piv == [0, 1]
    assert list(R.rows[1]) == [ZERO, ONE, gq(2)]


@given(st.lists(st.lists(scalars, min_size=4, max_size=4), min_size=1, max_size=4))
def test_subspace_membership_and_coords(vectors):
    U = Subspace.span(vectors, 4)
    for v in vectors:
        assert U.contains(v)
        assert U.vector(U.coords(v)) == list(v)


def test_subspace_order_and_sum():
    e1 = [ONE, ZERO, ZERO]
    e2 = [ZERO, ONE, ZERO]
    A = Subspace.span([e1], 3)
    B = Subspace.span([e2], 3)
    assert A <= A + B and not (A + B) <= A
    assert (A + B).dim == 2
    assert A.complement_indices() == [1, 2]


@given(matrices(3, 3))
def test_left_inverse(rows):
    cols = ExactMatrix(rows).columns()
    basis = Subspace.span(cols, 3)
    if basis.dim:
        L = left_inverse(basis.rows, 3)
        M = ExactMatrix.from_columns(basis.rows, 3)
        assert L @ M == ExactMatrix.identity(basis.dim)


@given(matrices(3, 5))
def test_sparse_kernel_matches_dense(rows):
    sparse = [{j: x for j, x in enumerate(r) if x} for r in rows]
    K = sparse_kernel(sparse, 5)
    assert Subspace.span(K, 5) == Subspace.span(kernel_basis(rows), 5)
