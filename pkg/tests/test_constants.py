from fractions import Fraction

import pytest

from antisym_hardy import constants as K


def test_small_values():
    assert K.poincare_constant(2) == 1 and K.poincare_constant(3) == 2
    assert K.c_d(2) == Fraction(5, 8)
    assert K.c_d(3) == Fraction(199, 48)
    assert K.lattice_constant(2) == Fraction(8, 13)
    assert K.lattice_constant(3) == Fraction(1176, 295)
    assert K.torus_constant(3) == Fraction(294, 295)
    assert K.hl_constant(3) == Fraction(49, 4)
    assert K.upper_bounds(2) == (4, 2)


@pytest.mark.parametrize("d", range(2, 30))
def test_ordering(d):
    cl = K.lattice_constant(d)
    assert 0 < cl < K.hl_constant(d)
    assert cl <= K.upper_bounds(d)[0]
    assert K.torus_constant(d) * 4 == cl
    assert isinstance(cl, Fraction)


def test_d4_grows_like_quartic():
    ratios = [K.lattice_constant(d) / d**4 for d in (50, 100, 200)]
    assert ratios[0] < ratios[1] < ratios[2] < Fraction(1, 4)


@pytest.mark.parametrize("bad", [0, 1, -3])
def test_rejects_small_dimension(bad):
    with pytest.raises(ValueError):
        K.c_d(bad)


def test_csv_table():
    lines = K.constants_csv(3).splitlines()
    assert lines[0].split(",") == K.CSV_COLUMNS
    assert lines[1] == "2,1,5/8,8/13,2/13,1,4,2"
    assert lines[2].startswith("3,2,199/48,1176/295,294/295,49/4")
