import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antisym_hardy.constants import poincare_constant, torus_constant, upper_bounds
from antisym_hardy.exact_core import GaussianRational
from antisym_hardy.torus import (
    QuadratureDisagreement,
    TrigPolynomial,
    grid_nodes,
    omega_upper_bound_ratio,
    poincare_optimizer,
    poincare_quotient,
    random_antisymmetric,
    torus_hardy_details,
    torus_hardy_quotient,
    weighted_l2,
)


@pytest.mark.parametrize("d", range(2, 7))
def test_optimizer_is_sharp(d):
    psi = poincare_optimizer(d)
    assert psi.antisymmetric and psi.zero_average
    assert poincare_quotient(psi) == poincare_constant(d)


@pytest.mark.parametrize("d", [2, 3, 4])
@given(seed=st.integers(0, 10**9))
def test_random_quotient_above_constant(d, seed):
    psi = random_antisymmetric(d, random.Random(seed))
    if psi.coeffs:
        assert poincare_quotient(psi) >= poincare_constant(d)


def test_poincare_requires_zero_average():
    psi = TrigPolynomial(2, {(0, 0): Fraction(1), (1, 2): Fraction(1)})
    with pytest.raises(ValueError):
        poincare_quotient(psi)


def test_grid_avoids_origin_for_even_m():
    for M in (2, 6, 64):
        assert min(abs(grid_nodes(M))) > 0
    assert min(abs(grid_nodes(3))) == 0
    with pytest.raises(ValueError):
        weighted_l2(poincare_optimizer(2), 3)


def test_relabel_preserves_energy():
    psi = random_antisymmetric(3, random.Random(1))
    phi = psi.relabel((2, 0, 1))
    assert phi.gradient_energy() == psi.gradient_energy()
    assert phi.antisymmetric


def test_dumps_loads_roundtrip():
    psi = TrigPolynomial(2, {(1, 2): GaussianRational(Fraction(1, 3), -2), (2, 1): GaussianRational(Fraction(-1, 3), 2)})
    assert TrigPolynomial.loads(psi.dumps(), 2).coeffs == psi.coeffs


def test_hardy_sandwich_d2():
    det = torus_hardy_details(poincare_optimizer(2), 128)
    assert det.rel_diff < 1e-4
    assert float(torus_constant(2)) - 1e-3 <= det.value <= float(upper_bounds(2)[1]) + 1e-3


def test_weight_bounded_by_dimension():
    assert omega_upper_bound_ratio(poincare_optimizer(3), 32) >= 1


def test_coarse_grid_flags_disagreement():
    with pytest.raises(QuadratureDisagreement):
        torus_hardy_details(poincare_optimizer(2), 2, rtol=1e-12)


def test_quotient_rejects_symmetric_input():
    psi = TrigPolynomial(2, {(1, 2): Fraction(1), (2, 1): Fraction(1)})
    with pytest.raises(ValueError):
        torus_hardy_quotient(psi, 16)


def test_weighted_l2_is_deterministic():
    psi = poincare_optimizer(3)
    assert weighted_l2(psi, 16) == weighted_l2(psi, 16)
