"""Trigonometric polynomials on Q_d = (-pi, pi)^d.

``psi(x) = (2 pi)^{-d/2} sum_n a(n) exp(-i n.x)``. Gradient energies come
straight from the coefficients (Parseval); only the singular weighted norm
``int |psi|^2 / omega`` with ``omega = sum_j sin^2(x_j/2)`` needs quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .combinatorics import antisymmetrize, is_antisymmetric, signed_orbit
from .exact_core import GaussianRational, abs2
from .lattice import dumps_function, loads_function, norm2


@dataclass
class TrigPolynomial:
    d: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {tuple(k): v for k, v in self.coeffs.items() if v}
        for k in self.coeffs:
            if len(k) != self.d:
                raise ValueError(f"frequency {k} is not {self.d}-dimensional")

    @property
    def zero_average(self) -> bool:
        return (0,) * self.d not in self.coeffs

    @property
    def antisymmetric(self) -> bool:
        return is_antisymmetric(self.coeffs, self.d)

    def scale(self, c) -> "TrigPolynomial":
        return TrigPolynomial(self.d, {n: c * v for n, v in self.coeffs.items()})

    def relabel(self, p) -> "TrigPolynomial":
        """Coordinate relabeling ``psi(x) -> psi(p . x)``."""
        inv = [0] * self.d
        for i, pi in enumerate(p):
            inv[pi] = i
        return TrigPolynomial(self.d, {tuple(n[i] for i in inv): v for n, v in self.coeffs.items()})

    def l2_norm2(self):
        """``int |psi|^2`` (Parseval)."""
        return sum((abs2(v) for v in self.coeffs.values()), Fraction(0))

    def gradient_energy(self):
        """``int |grad psi|^2 = sum |n|^2 |a(n)|^2``."""
        return sum((norm2(n) * abs2(v) for n, v in self.coeffs.items()), Fraction(0))

    def dumps(self) -> str:
        return dumps_function(self.coeffs, self.d)

    @classmethod
    def loads(cls, text: str, d: int | None = None) -> "TrigPolynomial":
        values = loads_function(text, d)
        dim = d if d is not None else len(next(iter(values))) if values else 0
        return cls(dim, values)


def poincare_quotient(psi: TrigPolynomial) -> Fraction:
    if not psi.coeffs:
        raise ValueError("Poincare quotient of the zero polynomial")
    if not psi.zero_average:
        raise ValueError("psi must have zero average (a(0) = 0)")
    return psi.gradient_energy() / psi.l2_norm2()


def poincare_optimizer(d: int) -> TrigPolynomial:
    """Coefficients +-1 on the signed orbit of minimal distinct-frequency norm."""
    orbit = signed_orbit(d)
    return TrigPolynomial(d, {n: Fraction(s) for n, s in orbit.entries.items()})


def random_antisymmetric(d: int, rng, *, terms: int = 4, radius: int = 3, bound: int = 1000) -> TrigPolynomial:
    """Random sparse Gaussian-rational coefficients, antisymmetrized."""
    raw = {}
    for _ in range(terms):
        n = tuple(rng.randint(-radius, radius) for _ in range(d))
        raw[n] = GaussianRational(
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
            Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
        )
    return TrigPolynomial(d, antisymmetrize(raw, d))


# ---------------------------------------------------------------------------
# quadrature of the Hardy weight
# ---------------------------------------------------------------------------


def grid_nodes(M: int) -> np.ndarray:
    """Half-shifted midpoints ``-pi + (k + 1/2) 2 pi / M``; avoids 0 iff M is even."""
    return -np.pi + (np.arange(M) + 0.5) * (2 * np.pi / M)


def evaluate_on_grid(psi: TrigPolynomial, M: int) -> np.ndarray:
    x = grid_nodes(M)
    shape = (M,) * psi.d
    out = np.zeros(shape, dtype=complex)
    for n, a in psi.coeffs.items():
        term = np.array(complex(a))
        for j, nj in enumerate(n):
            axis = [1] * psi.d
            axis[j] = M
            term = term * np.exp(-1j * nj * x).reshape(axis)
        out += term
    return out * (2 * np.pi) ** (-psi.d / 2)


def omega_on_grid(d: int, M: int) -> np.ndarray:
    s2 = np.sin(grid_nodes(M) / 2) ** 2
    out = np.zeros((M,) * d)
    for j in range(d):
        axis = [1] * d
        axis[j] = M
        out = out + s2.reshape(axis)
    return out


def weighted_l2(psi: TrigPolynomial, M: int) -> float:
    """Midpoint-rule value of ``int_{Q_d} |psi|^2 / omega``."""
    if M < 2 or M % 2:
        raise ValueError("M must be even and at least 2 (odd M puts a node on the singularity)")
    vals = evaluate_on_grid(psi, M)
    integrand = (vals.real**2 + vals.imag**2) / omega_on_grid(psi.d, M)
    return float(integrand.sum() * (2 * np.pi / M) ** psi.d)


class QuadratureDisagreement(RuntimeError):
    pass


@dataclass
class TorusQuotient:
    value: float
    value_fine: float
    weighted: float
    weighted_fine: float
    rel_diff: float
    M: int


def quadrature_pair(psi: TrigPolynomial, M: int) -> tuple[float, float, float]:
    """Weighted norm at ``M`` and ``2M`` and their relative difference."""
    coarse = weighted_l2(psi, M)
    fine = weighted_l2(psi, 2 * M)
    return coarse, fine, abs(coarse - fine) / abs(fine)


def torus_hardy_details(psi: TrigPolynomial, M: int, rtol: float | None = 1e-4) -> TorusQuotient:
    """Quotient at ``M`` and ``2M``; raises if they disagree beyond ``rtol``."""
    if not psi.antisymmetric:
        raise ValueError("weighted quadrature requires an antisymmetric psi")
    if not psi.zero_average or not psi.coeffs:
        raise ValueError("psi must be nonzero with zero average")
    energy = float(psi.gradient_energy())
    coarse, fine, rel = quadrature_pair(psi, M)
    if rtol is not None and rel > rtol:
        raise QuadratureDisagreement(f"M={M} and M={2 * M} differ by {rel:.3e} (> {rtol:g})")
    return TorusQuotient(energy / coarse, energy / fine, coarse, fine, rel, M)


def torus_hardy_quotient(psi: TrigPolynomial, M: int, rtol: float | None = None) -> float:
    """``sum |n|^2 |a(n)|^2 / int |psi|^2 / omega`` with the weight by quadrature."""
    if rtol is not None:
        return torus_hardy_details(psi, M, rtol).value
    if not psi.antisymmetric:
        raise ValueError("weighted quadrature requires an antisymmetric psi")
    return float(psi.gradient_energy()) / weighted_l2(psi, M)


def default_resolution(d: int) -> int:
    return {2: 256, 3: 64}.get(d, 32)


def omega_upper_bound_ratio(psi: TrigPolynomial, M: int) -> float:
    """``weighted_l2 / (sum |a|^2 / d)``; at least 1 because ``omega <= d``."""
    return weighted_l2(psi, M) / (float(psi.l2_norm2()) / psi.d)

