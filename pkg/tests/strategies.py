"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from spinorlab.core import gq
from spinorlab.qspace import diagonal_form

small_ints = st.integers(min_value=-6, max_value=6)
fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))
scalars = st.builds(gq, fractions, fractions)


def matrices(rows, cols):
    return st.lists(st.lists(scalars, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def forms(min_dim=1, max_dim=4):
    return st.lists(st.sampled_from([1, -1, 0]), min_size=min_dim, max_size=max_dim).map(diagonal_form)


def nonzero_forms(min_dim=1, max_dim=4, max_corank=None):
    s = forms(min_dim, max_dim).filter(lambda q: q.rank > 0)
    if max_corank is not None:
        s = s.filter(lambda q: q.corank <= max_corank)
    return s
