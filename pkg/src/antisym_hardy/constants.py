"""Closed-form sharp and bounding constants, all exact."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction


def _check_dim(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")


def poincare_constant(d: int) -> Fraction:
    """Antisymmetric Poincare constant ``N(N-1)(2N-1)/3 + (3-(-1)^d) N^2/2``."""
    _check_dim(d)
    n = d // 2
    sign = 1 if d % 2 == 0 else -1
    return Fraction(n * (n - 1) * (2 * n - 1), 3) + Fraction((3 - sign) * n * n, 2)


def c_d(d: int) -> Fraction:
    """Correction term ``(11 d^4 - 38 d^2 + 12 d + 12) / (48 d)``."""
    _check_dim(d)
    return Fraction(11 * d**4 - 38 * d**2 + 12 * d + 12, 48 * d)


def hl_constant(d: int) -> Fraction:
    """Sharp antisymmetric Hardy constant in the continuum, ``(d^2-2)^2/4``."""
    _check_dim(d)
    return Fraction((d * d - 2) ** 2, 4)


def classical_hardy_constant(d: int) -> Fraction:
    """``(d-2)^2/4`` without the antisymmetry constraint."""
    _check_dim(d)
    return Fraction((d - 2) ** 2, 4)


def lattice_constant(d: int) -> Fraction:
    """Lower bound for the lattice antisymmetric Hardy constant."""
    return hl_constant(d) / (1 + c_d(d) / poincare_constant(d))


def torus_constant(d: int) -> Fraction:
    return lattice_constant(d) / 4


def upper_bounds(d: int) -> tuple[Fraction, Fraction]:
    """Orbit-function upper bounds ``(2d C_P, d C_P)`` for lattice and torus."""
    cp = poincare_constant(d)
    return 2 * d * cp, d * cp


@dataclass(frozen=True)
class ConstantsRow:
    d: int
    C_P_as: Fraction
    c_d: Fraction
    C_L_as: Fraction
    C_T_as: Fraction
    HL: Fraction
    classical: Fraction
    upper_lattice: Fraction
    upper_torus: Fraction


def constants_row(d: int) -> ConstantsRow:
    up_l, up_t = upper_bounds(d)
    return ConstantsRow(
        d=d,
        C_P_as=poincare_constant(d),
        c_d=c_d(d),
        C_L_as=lattice_constant(d),
        C_T_as=torus_constant(d),
        HL=hl_constant(d),
        classical=classical_hardy_constant(d),
        upper_lattice=up_l,
        upper_torus=up_t,
    )


CSV_COLUMNS = ["d", "C_P_as", "c_d", "C_L_as", "C_T_as", "HL", "upper_2dCP", "upper_dCP"]


def table_rows(dmax: int, dmin: int = 2) -> list[dict]:
    from .exact_core import format_rational

    rows = []
    for d in range(dmin, dmax + 1):
        r = constants_row(d)
        values = [r.C_P_as, r.c_d, r.C_L_as, r.C_T_as, r.HL, r.upper_lattice, r.upper_torus]
        rows.append({"d": str(d), **{k: format_rational(v) for k, v in zip(CSV_COLUMNS[1:], values)}})
    return rows


def constants_csv(dmax: int, dmin: int = 2) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(table_rows(dmax, dmin))
    return buf.getvalue()
