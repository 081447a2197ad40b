from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antisym_hardy.exact_core import (
    I,
    Add,
    Const,
    Div,
    GaussianRational,
    HalfCos,
    HalfSin,
    InvalidTestPoint,
    Jet1,
    MultiPoly,
    Mul,
    Pow,
    Var,
    exact_eval,
    format_rational,
    jet_eval,
    parse_rational,
    poly_laplacian,
    pyth_point,
)

rationals = st.builds(Fraction, st.integers(-999, 999), st.integers(1, 50))
gaussians = st.builds(GaussianRational, rationals, rationals)


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_integer_has_no_denominator():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 4)) == "-1/4"


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).abs2() == a.abs2() * b.abs2()
    assert a.conjugate().conjugate() == a


@given(gaussians, gaussians)
def test_gaussian_division_inverts_multiplication(a, b):
    if not b:
        with pytest.raises(ZeroDivisionError):
            a / b
        return
    assert (a / b) * b == a


def test_i_squared():
    assert I * I == GaussianRational(-1, 0)


polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=5
).map(lambda t: MultiPoly(2, t))
points = st.tuples(rationals, rationals)


@given(polys, polys, points)
def test_poly_product_evaluates_pointwise(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(polys, polys)
def test_poly_product_rule(p, q):
    assert (p * q).diff(0) == p.diff(0) * q + p * q.diff(0)


def test_laplacian_of_harmonic_and_nonharmonic():
    x, y = MultiPoly.variables(2)
    assert poly_laplacian(x * x - y * y).is_zero()
    assert poly_laplacian(x * x + y * y) == MultiPoly.constant(2, 4)


def test_homogeneity_and_degree():
    x, y = MultiPoly.variables(2)
    p = x**3 - 2 * x * y * y
    assert p.degree() == 3 and p.is_homogeneous()
    assert not (p + x).is_homogeneous()


def test_permute_variables_swaps():
    x, y = MultiPoly.variables(2)
    assert (x - y).permute_variables((1, 0)) == y - x


@given(rationals, rationals)
def test_jet_product_and_quotient_rules(a, b):
    u = Jet1.seed(a, 0, 1)
    v = Jet1.seed(b, 0, 1, slope=2)
    w = u * v
    assert w.partials[0] == b + 2 * a
    if b:
        q = u / v
        assert q.partials[0] == (b - 2 * a) / (b * b)


def test_jet_division_by_zero_is_invalid_point():
    with pytest.raises(InvalidTestPoint):
        Jet1.constant(1, 1) / Jet1.constant(0, 1)


@given(st.lists(rationals, min_size=2, max_size=2))
def test_jet_chain_rule_against_polynomial(x):
    # f = x0^2 x1 / (1 + x1^2): compare with hand derivatives
    expr = Div(Mul(Pow(Var(0), 2), Var(1)), Add(Const(1), Pow(Var(1), 2)))
    j = jet_eval(expr, x)
    x0, x1 = x
    den = 1 + x1 * x1
    assert j.value == x0 * x0 * x1 / den
    assert j.partials[0] == 2 * x0 * x1 / den
    assert j.partials[1] == x0 * x0 * (1 - x1 * x1) / (den * den)
    assert exact_eval(expr, x) == j.value


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_pyth_points_lie_on_circle(d):
    import random

    rng = random.Random(d)
    for _ in range(100):
        t = [Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(d)]
        p = pyth_point(t)
        assert all(s * s + c * c == 1 for s, c in zip(p.s, p.c))


def test_half_angle_derivatives():
    p = pyth_point([Fraction(1, 2)])
    s, c = p.s[0], p.c[0]
    assert jet_eval(HalfSin(0), p).partials == (c / 2,)
    assert jet_eval(HalfCos(0), p).partials == (-s / 2,)
    # sin^2 + cos^2 = 1 has zero derivative
    one = Add(Pow(HalfSin(0), 2), Pow(HalfCos(0), 2))
    j = jet_eval(one, p)
    assert j.value == 1 and j.partials == (0,)
