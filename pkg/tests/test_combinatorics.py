import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antisym_hardy.combinatorics import (
    act,
    antisymmetrize,
    base_vectors,
    compose,
    is_antisymmetric,
    min_distinct_norm,
    parity,
    permutations,
    signed_orbit,
    sort_with_sign,
    transposition,
)
from antisym_hardy.constants import poincare_constant
from antisym_hardy.lattice import norm2

perm4 = st.permutations(list(range(4))).map(tuple)


@given(perm4, perm4)
def test_parity_is_homomorphism(p, q):
    assert parity(compose(p, q)) == parity(p) * parity(q)


@given(perm4, st.tuples(*[st.integers(-5, 5)] * 4))
def test_action_composes(p, n):
    q = (1, 0, 3, 2)
    # (p.n)[i] = n[p[i]] is a right action
    assert act(compose(p, q), n) == act(q, act(p, n))
    assert sorted(act(p, n)) == sorted(n)


def test_transposition_is_odd():
    assert parity(transposition(5, 1, 3)) == -1
    assert parity(tuple(range(5))) == 1


def test_permutation_count():
    assert len(list(permutations(4))) == 24


def test_sort_with_sign():
    assert sort_with_sign((3, 1, 2)) == ((1, 2, 3), 1)
    assert sort_with_sign((2, 1, 3)) == ((1, 2, 3), -1)


@pytest.mark.parametrize("d", range(2, 7))
def test_signed_orbit_size_and_norm(d):
    orbit = signed_orbit(d)
    bases = base_vectors(d)
    assert len(orbit) == len(bases) * math.factorial(d)
    assert {norm2(n) for n in orbit} == {poincare_constant(d)}
    assert is_antisymmetric(orbit.entries, d)


def test_base_vectors_small():
    assert base_vectors(2) == [(0, 1)] or sorted(base_vectors(2)[0]) == [0, 1]
    assert sorted(base_vectors(3)[0]) == [-1, 0, 1]
    assert len(base_vectors(4)) == 2


functions3 = st.dictionaries(
    st.tuples(*[st.integers(-3, 3)] * 3), st.fractions(max_denominator=9), max_size=5
)


@given(functions3)
def test_antisymmetrize_is_projector(f):
    a = antisymmetrize(f, 3)
    assert is_antisymmetric(a, 3)
    assert antisymmetrize(a, 3) == a
    assert all(len(set(n)) == 3 for n in a)


@pytest.mark.parametrize("d,expected", list(zip(range(2, 9), [1, 2, 6, 10, 19, 28, 44])))
def test_min_distinct_norm(d, expected):
    assert min_distinct_norm(d) == expected


def test_min_distinct_norm_range():
    with pytest.raises(ValueError):
        min_distinct_norm(1)
