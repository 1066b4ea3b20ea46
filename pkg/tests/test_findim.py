"""Structure of finite-dimensional algebras: radical, blocks, idempotents."""

import pytest
from hypothesis import given, settings

from spinorlab.clifford import clifford, even_part, matrix_algebra
from spinorlab.core import ExactMatrix, Subspace, gq, rank
from spinorlab.findim import (
    center,
    fingerprint,
    gaussian_roots,
    primitive_idempotents,
    radical,
    semisimple_blocks,
    semisimple_quotient,
    structure,
)
from spinorlab.qspace import diagonal_form

from strategies import nonzero_forms


def _complex_blocks(n):
    """Wedderburn sizes of Cl_0 of a nondegenerate complex form of dimension n."""
    if n == 1:
        return [1]
    if n % 2:
        return [2 ** ((n - 1) // 2)]
    return [2 ** (n // 2 - 1)] * 2


@pytest.mark.parametrize("n", range(2, 8))
def test_nondegenerate_blocks(n):
    assert semisimple_blocks(even_part(diagonal_form([1] * n))) == _complex_blocks(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_full_clifford_blocks(n):
    # Cl of dimension n is Cl_0 of dimension n + 1
    assert semisimple_blocks(clifford(diagonal_form([1] * n))) == _complex_blocks(n + 1)


def test_fingerprint_examples():
    fp = fingerprint(even_part(diagonal_form([1, 1, 0]))).canonical()
    assert fp == (4, (2, 0), (1, 1), ((1, 1), (1, 1)))
    fp = fingerprint(even_part(diagonal_form([1, 0]))).canonical()
    assert fp == (2, (1, 0), (1,), ((2,),))


@given(nonzero_forms(max_dim=5, max_corank=2))
def test_radical_nilpotent_with_semisimple_quotient(q):
    A = even_part(q)
    r = radical(A)
    assert r.nilpotency_index > 0
    assert r.series[-1] == 0
    # radical of the Clifford even part is generated by kernel directions
    assert r.dim == A.dim - sum(b * b for b in semisimple_blocks(A))
    Q = semisimple_quotient(A)
    assert radical(Q.algebra).dim == 0


@given(nonzero_forms(max_dim=5, max_corank=2))
def test_idempotents_complete_and_orthogonal(q):
    A = even_part(q)
    idems = primitive_idempotents(A)
    total = A.zero()
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            ef = A.multiply(e, f)
            assert ef == (e if i == j else A.zero())
        total = A.add(total, e)
    assert total == A.one()
    assert len(idems) == sum(semisimple_blocks(A))


@given(nonzero_forms(max_dim=5, max_corank=2))
def test_primitive_corners_are_local(q):
    A = even_part(q)
    st = structure(A)
    r = st.radical
    for e in st.idempotents:
        corner = Subspace.span([A.multiply(A.multiply(e, A.basis_element(b)), e) for b in range(A.dim)], A.dim)
        rad_corner = Subspace.span([A.multiply(A.multiply(e, x), e) for x in r.basis.rows], A.dim)
        # e A e / e r e is the ground field
        assert corner.dim - rad_corner.dim == 1


@pytest.mark.parametrize("diag", [[1, 0], [1, 1, 0], [1, 1, 1, 0]])
def test_morita_invariance_of_fingerprint(diag):
    q = diagonal_form(diag)
    small = fingerprint(even_part(q))
    big = fingerprint(even_part(diagonal_form([1, 1] + diag)))
    assert tuple(sorted(b * 2 for b in small.blocks)) == tuple(sorted(big.blocks))
    assert small.canonical()[3] == big.canonical()[3]


def test_matrix_algebra_blocks():
    A = even_part(diagonal_form([1, 1]))
    assert semisimple_blocks(matrix_algebra(A, 2)) == [2, 2]


@given(nonzero_forms(max_dim=4))
def test_center_matches_brute_force(q):
    A = even_part(q)
    # x central iff x b = b x for every basis element b: solve the stacked system
    rows = []
    for b in range(A.dim):
        L = A.right_matrix(A.basis_element(b))
        R = A.left_matrix(A.basis_element(b))
        for i in range(A.dim):
            rows.append([L.rows[i][j] - R.rows[i][j] for j in range(A.dim)])
    expected = A.dim - rank(ExactMatrix(rows)) if rows else A.dim
    Z = center(A)
    assert len(Z) == expected
    for z in Z:
        assert all(A.commutes(z, A.basis_element(b)) for b in range(A.dim))


def test_gaussian_roots():
    # (x - 1)(x - i)^2 = x^3 - (1 + 2i) x^2 + (-1 + 2i) x + 1
    p = [gq(1), gq(-1, 2), gq(-1, -2), gq(1)]
    roots = dict((str(r), m) for r, m in gaussian_roots(p))
    assert roots == {str(gq(1)): 1, str(gq(0, 1)): 2}
