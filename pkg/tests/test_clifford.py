"""Clifford algebras: sign rule, associativity, grading, ideals, isomorphisms."""

import random

import pytest
from hypothesis import given, strategies as st

from spinorlab.clifford import (
    CliffordElement,
    clifford,
    clifford_tensor_isomorphism,
    even_part,
    graded_tensor,
    left_ideal,
    matrix_algebra,
    monomial_product,
    morita_isomorphism,
    odd_factor_embedding,
    tensor_product,
)
from spinorlab.core import Subspace, gq
from spinorlab.qspace import (
    diagonal_form,
    hyperbolic_plane,
    orthogonal_sum,
    random_invertible,
    random_isotropic,
    standard_isotropic,
)

from strategies import forms, nonzero_forms


def _reduce_word(word, diagonal):
    """Independent oracle: bubble-sort a generator word, contracting e_i e_i = q_i."""
    word = list(word)
    coeff = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if a > b:
                word[k], word[k + 1] = b, a
                coeff = -coeff
                changed = True
                break
            if a == b:
                coeff *= diagonal[a]
                del word[k : k + 2]
                changed = True
                break
    mask = 0
    for j in word:
        mask |= 1 << j
    return coeff, mask


def _bits(S):
    return [j for j in range(S.bit_length()) if S >> j & 1]


@given(st.lists(st.sampled_from([1, -1, 0]), min_size=1, max_size=6), st.data())
def test_sign_rule_matches_word_reduction(diagonal, data):
    n = len(diagonal)
    S = data.draw(st.integers(0, (1 << n) - 1))
    T = data.draw(st.integers(0, (1 << n) - 1))
    c, U = monomial_product(S, T, diagonal)
    c2, U2 = _reduce_word(_bits(S) + _bits(T), diagonal)
    assert c == c2
    if c:
        assert U == U2


@given(forms(max_dim=5))
def test_clifford_associative_unital_graded(q):
    A = clifford(q)
    assert A.dim == 1 << q.dim
    assert A.check_unit()
    assert A.check_associativity()
    assert A.check_grading()


@given(forms(max_dim=5))
def test_even_part_closed(q):
    A = even_part(q)
    assert A.dim == 1 << (q.dim - 1)
    assert all(p == 0 for p in A.parity)
    assert A.check_associativity()


@given(forms(min_dim=2, max_dim=4), st.data())
def test_generators_anticommute(q, data):
    i = data.draw(st.integers(0, q.dim - 1))
    j = data.draw(st.integers(0, q.dim - 1))
    ei, ej = CliffordElement.generator(q, i), CliffordElement.generator(q, j)
    lhs = ei * ej + ej * ei
    expected = CliffordElement.scalar(q, 2 * q.diagonal[i]) if i == j else CliffordElement(q)
    assert lhs == expected


@given(forms(max_dim=4), st.integers(0, 10_000))
def test_associativity_random_elements(q, seed):
    rng = random.Random(seed)
    n = 1 << q.dim

    def rand():
        return CliffordElement(q, {S: gq(rng.randint(-2, 2), rng.randint(-2, 2)) for S in range(n)})

    x, y, z = rand(), rand(), rand()
    assert (x * y) * z == x * (y * z)


@given(nonzero_forms(max_dim=5), st.integers(0, 10_000))
def test_ideal_independent_of_basis(q, seed):
    rng = random.Random(seed)
    W = random_isotropic(q, rng)
    I = left_ideal(q, W)
    if W.dim:
        W2 = W.change_basis(random_invertible(W.dim, rng))
        I2 = left_ideal(q, W2)
        assert I.I0 == I2.I0 and I.I1 == I2.I1


@given(nonzero_forms(max_dim=5), st.integers(0, 10_000))
def test_ideal_rank_and_closure(q, seed):
    W = random_isotropic(q, random.Random(seed))
    I = left_ideal(q, W)
    assert I.rank == 1 << (q.dim - W.dim - 1)
    # closed under left multiplication by generators
    for i in range(q.dim):
        e = CliffordElement.generator(q, i)
        for p in (0, 1):
            for k in range(I.halves[p].dim):
                assert I.contains(e * I.element(p, k))


def test_ideal_rejects_non_isotropic():
    q = diagonal_form([1, 1, 0])
    with pytest.raises(ValueError):
        left_ideal(q, [[gq(1), gq(0), gq(0)]])


def test_nested_ideals():
    q = diagonal_form([1, 1, 1, 1, 0])
    big = left_ideal(q, standard_isotropic(q, {"dim": 1}))
    small = left_ideal(q, standard_isotropic(q, {"dim": 2}))
    for p in (0, 1):
        assert all(big.halves[p].contains(r) for r in small.halves[p].rows)


@pytest.mark.parametrize("diag", [[1, 0], [1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 1, 0]])
def test_morita_isomorphism(diag):
    q = diagonal_form(diag)
    phi = morita_isomorphism(q)
    assert phi.is_isomorphism
    assert phi.source.dim == 4 * even_part(q).dim


def test_tensor_isomorphism():
    q, q2 = diagonal_form([1, 0]), diagonal_form([1, -1])
    phi = clifford_tensor_isomorphism(q, q2)
    assert phi.is_isomorphism
    assert phi.source.dim == clifford(orthogonal_sum(q, q2)).dim


def test_odd_factor_embedding():
    q, q2 = diagonal_form([1]), diagonal_form([1, 0])
    phi = odd_factor_embedding(q, q2)
    assert phi.is_isomorphism


def test_matrix_and_tensor_algebras_associative():
    A = even_part(diagonal_form([1, 0]))
    assert matrix_algebra(A, 2).check_associativity()
    B = clifford(diagonal_form([1]))
    assert tensor_product(A, B).check_associativity()
    G = graded_tensor(B, B)
    assert G.check_associativity() and G.check_grading()


def test_hyperbolic_clifford_is_matrix_algebra():
    # Cl(<1,1>) is M_2: its center is one-dimensional
    A = clifford(hyperbolic_plane())
    center = Subspace.span(
        [x for x in [A.basis_element(a) for a in range(A.dim)] if all(A.commutes(x, g) for g in A.generators)],
        A.dim,
    )
    assert center.dim == 1
