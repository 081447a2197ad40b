import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from antisym_hardy.combinatorics import permutations, signed_orbit
from antisym_hardy.constants import lattice_constant, poincare_constant
from antisym_hardy.lattice import (
    LatticeFunction,
    box_problem,
    chamber_extension,
    dense_oracle,
    dirichlet_energy,
    dumps_function,
    estimate_sharp_constant,
    fundamental_domain_sum,
    hardy_quotient,
    loads_function,
    orbit_function,
    random_antisymmetric,
    verify_transform,
    weighted_norm,
)


@pytest.mark.parametrize("d,expected", [(2, 4), (3, 12), (4, 48), (5, 100)])
def test_orbit_quotient(d, expected):
    q = hardy_quotient(orbit_function(signed_orbit(d)))
    assert q == expected == 2 * d * poincare_constant(d)


def test_weighted_norm_rejects_origin():
    u = LatticeFunction(2, {(0, 0): 1, (1, 0): 2})
    with pytest.raises(ValueError):
        weighted_norm(u)


def test_antisymmetric_flag_is_validated():
    with pytest.raises(ValueError):
        LatticeFunction(2, {(0, 1): 1}, antisymmetric=True)


@given(st.integers(0, 10**6))
def test_energy_permutation_invariance(seed):
    rng = random.Random(seed)
    u = random_antisymmetric(3, rng, points=3, radius=2, bound=20)
    for p in permutations(3):
        v = u.permuted(p)
        assert dirichlet_energy(v) == dirichlet_energy(u)
        assert weighted_norm(v) == weighted_norm(u)


@pytest.mark.parametrize("d", [2, 3])
def test_transform_random(d):
    rng = random.Random(11 * d)
    for _ in range(10):
        assert verify_transform(random_antisymmetric(d, rng)).passed


def test_transform_orbit_example():
    rec = verify_transform(orbit_function(signed_orbit(2)))
    assert rec.passed and rec.lhs == "[4, 16]"


def test_fundamental_domain_sum_rejects_diagonal_and_asymmetry():
    with pytest.raises(ValueError, match=r"\(1, 1\)"):
        fundamental_domain_sum({(1, 1): Fraction(1)}, 2)
    with pytest.raises(ValueError):
        fundamental_domain_sum({(1, 2): Fraction(1)}, 2)
    assert fundamental_domain_sum({(1, 2): 1, (2, 1): 1}, 2).passed


def test_serialization_roundtrip():
    u = random_antisymmetric(3, random.Random(5))
    text = dumps_function(u.values, 3)
    assert loads_function(text, 3) == u.values


def test_small_box_matches_dense_oracle():
    prob = box_problem(2, 3)
    est = estimate_sharp_constant(2, 3, 1e-10)
    assert est.residual <= 1e-10
    assert est.value == pytest.approx(dense_oracle(prob), abs=1e-10)


def test_eigenvector_quotient_equals_eigenvalue():
    prob = box_problem(2, 4)
    est = estimate_sharp_constant(2, 4, 1e-12)
    u = chamber_extension(prob, est.vector)
    assert float(hardy_quotient(u)) == pytest.approx(est.value, rel=1e-9)


def test_full_representation_agrees_with_chamber():
    a = estimate_sharp_constant(2, 5, 1e-10).value
    b = estimate_sharp_constant(2, 5, 1e-9, representation="full").value
    assert a == pytest.approx(b, rel=1e-7)


def test_monotone_in_box_and_lower_bound():
    vals = [estimate_sharp_constant(2, R, 1e-10).value for R in (4, 8, 12)]
    assert vals[0] >= vals[1] >= vals[2] >= float(lattice_constant(2))


def test_without_antisymmetry_eigenvalue_decays():
    a = estimate_sharp_constant(2, 10, 1e-10, antisym=False).value
    b = estimate_sharp_constant(2, 30, 1e-10, antisym=False).value
    assert b < a and b < float(lattice_constant(2))


def test_bad_arguments():
    with pytest.raises(ValueError):
        estimate_sharp_constant(2, 3, 0)
    with pytest.raises(ValueError):
        box_problem(1, 3)
    with pytest.raises(ValueError):
        box_problem(5, 10, representation="full")


def test_deterministic():
    a = estimate_sharp_constant(3, 4, 1e-10)
    b = estimate_sharp_constant(3, 4, 1e-10)
    assert a.value == b.value and np.array_equal(a.vector, b.vector)
