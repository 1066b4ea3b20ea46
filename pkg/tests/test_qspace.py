"""Quadratic spaces, isotropic subspaces, random isometries."""

import random

import pytest
from hypothesis import given, strategies as st

from spinorlab.core import ZERO, gq
from spinorlab.qspace import (
    IsotropicSubspace,
    diagonal_form,
    hyperbolic_plane,
    is_isotropic,
    max_isotropic_dim,
    orthogonal_sum,
    parse_form,
    random_isometry,
    random_isotropic,
    standard_family,
    standard_isotropic,
)

from strategies import forms, nonzero_forms, scalars


def test_rank_and_corank():
    q = diagonal_form([1, 1, 1, 1, 0])
    assert (q.dim, q.rank, q.corank) == (5, 4, 1)
    assert q.kernel_indices == [4]


def test_max_isotropic_dim():
    # floor(rank / 2) + corank
    assert max_isotropic_dim(diagonal_form([1, 0])) == 1
    assert max_isotropic_dim(diagonal_form([1, 1, 0])) == 2
    assert max_isotropic_dim(diagonal_form([1, 1, 1, 0])) == 2
    assert max_isotropic_dim(diagonal_form([1] * 6 + [0])) == 4
    assert max_isotropic_dim(diagonal_form([0, 0])) == 2


def test_hyperbolic_plane_is_sum_of_squares():
    h = hyperbolic_plane()
    assert h.rank == 2
    assert max_isotropic_dim(h) == 1


def test_orthogonal_sum_concatenates():
    q = orthogonal_sum(diagonal_form([1, 0]), diagonal_form([-1]))
    assert q.dim == 3 and q.rank == 2 and q.corank == 1


def test_parse_form_roundtrip():
    q = parse_form("1,1,0")
    assert q.dim == 3 and q.corank == 1


@pytest.mark.parametrize("bad", ["", "1,,0", "a,1", "1,2.5"])
def test_parse_form_rejects(bad):
    with pytest.raises(ValueError):
        parse_form(bad)


def test_standard_isotropic_rejects_large_dim():
    q = diagonal_form([1, 1, 0])
    with pytest.raises(ValueError):
        standard_isotropic(q, {"dim": 3})


def test_non_isotropic_rejected():
    q = diagonal_form([1, 1, 0])
    assert not is_isotropic(q, [[gq(1), ZERO, ZERO]])


@given(nonzero_forms(max_dim=6))
def test_standard_family_is_isotropic(q):
    for label, W in standard_family(q):
        assert is_isotropic(q, W), label
        assert W.dim <= max_isotropic_dim(q)


@given(nonzero_forms(max_dim=6), st.integers(0, 10_000))
def test_random_isotropic_is_isotropic(q, seed):
    W = random_isotropic(q, random.Random(seed))
    assert is_isotropic(q, W)
    assert W.span().dim == W.dim


@given(forms(max_dim=5), st.integers(0, 10_000), st.data())
def test_random_isometry_preserves_form(q, seed, data):
    g = random_isometry(q, random.Random(seed))
    x = data.draw(st.lists(scalars, min_size=q.dim, max_size=q.dim))
    y = data.draw(st.lists(scalars, min_size=q.dim, max_size=q.dim))
    assert q.value(g(x)) == q.value(x)
    assert q.polar(g(x), g(y)) == q.polar(x, y)


@given(forms(max_dim=5), st.data())
def test_polarization_identity(q, data):
    x = data.draw(st.lists(scalars, min_size=q.dim, max_size=q.dim))
    y = data.draw(st.lists(scalars, min_size=q.dim, max_size=q.dim))
    s = [a + b for a, b in zip(x, y)]
    # q(x + y) = q(x) + q(y) + 2 B(x, y)
    assert q.value(s) == q.value(x) + q.value(y) + q.polar(x, y) * 2


def test_kernel_intersection():
    q = diagonal_form([1, 1, 0])
    W = standard_isotropic(q, {"dim": 2, "kernel": True})
    assert W.contains_kernel()
    W0 = standard_isotropic(q, {"dim": 1})
    assert W0.kernel_intersection_dim() == 0
