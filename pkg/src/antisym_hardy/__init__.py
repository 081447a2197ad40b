"""Exact and numerical verification of Hardy-type inequalities for antisymmetric functions."""

from .constants import (
    c_d,
    hl_constant,
    lattice_constant,
    poincare_constant,
    torus_constant,
    upper_bounds,
)
from .report import CheckRecord

__version__ = "0.1.0"
__all__ = [
    "CheckRecord",
    "c_d",
    "hl_constant",
    "lattice_constant",
    "poincare_constant",
    "torus_constant",
    "upper_bounds",
]
