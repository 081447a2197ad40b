"""Euclidean checks: Vandermonde harmonicity, radial and Weyl-chamber quotients.

For ``u = V(x) g(r) / r^l`` with ``V`` the Vandermonde polynomial of degree
``l = d(d-1)/2`` (homogeneous and harmonic), ``V / r^l`` is a spherical
harmonic of degree ``l`` and the Rayleigh quotient collapses to

    int (g'^2 + L g^2 / r^2) r^{d-1} dr / int g^2 r^{d-3} dr,  L = l(l+d-2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy import integrate

from .combinatorics import parity, permutations
from .constants import hl_constant
from .exact_core import MultiPoly
from .report import CheckRecord, make_record


def vandermonde(d: int) -> MultiPoly:
    """``prod_{i<j} (x_j - x_i)``."""
    if not 2 <= d <= 5:
        raise ValueError("vandermonde is provided for 2 <= d <= 5")
    xs = MultiPoly.variables(d)
    out = MultiPoly.constant(d, 1)
    for i, j in combinations(range(d), 2):
        out = out * (xs[j] - xs[i])
    return out


def harmonic_degree(d: int) -> int:
    return d * (d - 1) // 2


def angular_eigenvalue(d: int) -> int:
    l = harmonic_degree(d)
    return l * (l + d - 2)


def angular_identity(d: int) -> CheckRecord:
    """``(d-2)^2/4 + l(l+d-2) == (d^2-2)^2/4`` for ``l = d(d-1)/2``."""
    lhs = Fraction((d - 2) ** 2, 4) + angular_eigenvalue(d)
    return make_record("angular_identity", d, lhs, hl_constant(d), params={"l": harmonic_degree(d)})


def angular_identity_symbolic() -> CheckRecord:
    """The same identity as a polynomial identity in ``d`` (times 4)."""
    (x,) = MultiPoly.variables(1)
    four_l_term = x * (x - 1) * (x * x + x - 4)  # 4 l (l + d - 2)
    lhs = (x - 2) ** 2 + four_l_term
    rhs = (x * x - 2) ** 2
    residual = lhs - rhs
    return make_record("angular_identity_symbolic", 0, repr(residual), "0", ok=residual.is_zero())


# ---------------------------------------------------------------------------
# radial profiles
# ---------------------------------------------------------------------------


def _bump(t):
    return np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)


def _bump_prime(t):
    safe = np.where(t > 0, t, 1.0)
    return np.where(t > 0, np.exp(-1.0 / safe) / safe**2, 0.0)


def smooth_step(t):
    """C-infinity step from 0 (t <= 0) to 1 (t >= 1)."""
    t = np.asarray(t, dtype=float)
    a, b = _bump(t), _bump(1 - t)
    return a / (a + b)


def smooth_step_prime(t):
    t = np.asarray(t, dtype=float)
    a, b = _bump(t), _bump(1 - t)
    da, db = _bump_prime(t), -_bump_prime(1 - t)
    return (da * (a + b) - a * (da + db)) / (a + b) ** 2


@dataclass(frozen=True)
class RadialProfile:
    """Radial factor ``g`` of ``u = V g / r^l``.

    ``gaussian``: ``g(r) = r^l exp(-r^2)``.
    ``plateau``: ``g(r) = r^{-(d-2)/2} phi(log(r/a))`` where ``phi`` rises
    smoothly over the first fraction ``width`` of ``[0, log(b/a)]``, equals 1
    in the middle and falls over the last fraction ``width``.
    """

    kind: str
    d: int
    a: float = 1.0
    b: float = 10.0
    width: float = 0.1

    def __post_init__(self):
        if self.kind not in ("gaussian", "plateau"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind == "plateau":
            if not 0 < self.a < self.b:
                raise ValueError("plateau needs 0 < a < b")
            if not 0 < self.width < 0.5:
                raise ValueError("plateau width must lie in (0, 1/2)")

    @classmethod
    def plateau(cls, d: int, ratio: float, a: float = 1.0, width: float = 0.1) -> "RadialProfile":
        return cls("plateau", d, a, a * ratio, width)

    @classmethod
    def gaussian(cls, d: int) -> "RadialProfile":
        return cls("gaussian", d)

    @property
    def l(self) -> int:
        return harmonic_degree(self.d)

    def _phi(self, r):
        T = math.log(self.b / self.a)
        w = self.width * T
        t = np.log(np.asarray(r, dtype=float) / self.a)
        rise = smooth_step(t / w)
        fall = smooth_step((T - t) / w)
        drise = smooth_step_prime(t / w) / w
        dfall = -smooth_step_prime((T - t) / w) / w
        return rise * fall, drise * fall + rise * dfall  # phi and d phi / d log r

    def g(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "gaussian":
            return r**self.l * np.exp(-r * r)
        gamma = (self.d - 2) / 2
        phi, _ = self._phi(r)
        return r**-gamma * phi

    def dg(self, r):
        r = np.asarray(r, dtype=float)
        l = self.l
        if self.kind == "gaussian":
            return (l * r ** (l - 1) - 2 * r ** (l + 1)) * np.exp(-r * r)
        gamma = (self.d - 2) / 2
        phi, dphi = self._phi(r)
        return r ** (-gamma - 1) * (dphi - gamma * phi)

    def log_breakpoints(self) -> list[float]:
        """Interval ends in ``log r`` where the integrand changes regime."""
        if self.kind == "gaussian":
            return [math.log(1e-12), math.log(1.0), math.log(12.0)]
        T = math.log(self.b / self.a)
        la = math.log(self.a)
        w = self.width * T
        return [la, la + w, la + T - w, la + T]


class QuadratureError(RuntimeError):
    pass


@dataclass
class RadialQuotient:
    value: float
    numerator: float
    denominator: float
    num_error: float
    den_error: float


def _log_quad(f, breaks, tol):
    total, err = 0.0, 0.0
    for lo, hi in zip(breaks, breaks[1:]):
        val, e = integrate.quad(lambda t: f(math.exp(t)) * math.exp(t), lo, hi, epsabs=tol / len(breaks), epsrel=0, limit=500)
        total += val
        err += e
    return total, err


def radial_quotient_details(d: int, profile: RadialProfile, tol: float = 1e-10) -> RadialQuotient:
    if profile.d != d:
        raise ValueError("profile dimension mismatch")
    L = angular_eigenvalue(d)
    breaks = profile.log_breakpoints()

    def num(r):
        g, dg = float(profile.g(r)), float(profile.dg(r))
        return (dg * dg + L * g * g / (r * r)) * r ** (d - 1)

    def den(r):
        g = float(profile.g(r))
        return g * g * r ** (d - 3)

    n_val, n_err = _log_quad(num, breaks, tol)
    d_val, d_err = _log_quad(den, breaks, tol)
    if n_err > tol or d_err > tol or d_val <= 0:
        raise QuadratureError(f"radial quadrature did not reach tol={tol:g} (errors {n_err:.2e}, {d_err:.2e})")
    return RadialQuotient(n_val / d_val, n_val, d_val, n_err, d_err)


def radial_quotient(d: int, profile: RadialProfile, tol: float = 1e-10) -> float:
    return radial_quotient_details(d, profile, tol).value


# ---------------------------------------------------------------------------
# Weyl chamber
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChamberBump:
    """Product of smooth bumps on ``[a_i, b_i]`` with ``b_i < a_{i+1}``.

    The support lies in the chamber ``x_1 < ... < x_d`` and avoids 0.
    """

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for a, b in ivs:
            if not a < b:
                raise ValueError(f"empty interval [{a}, {b}]")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if not b0 < a1:
                raise ValueError("bump support leaves the chamber x_1 < ... < x_d")
        if all(a <= 0 <= b for a, b in ivs):
            raise ValueError("bump support contains the origin")

    @property
    def d(self) -> int:
        return len(self.intervals)

    def factor(self, i: int, x):
        a, b = self.intervals[i]
        s = (2 * np.asarray(x, dtype=float) - (a + b)) / (b - a)
        inside = np.abs(s) < 1
        q = np.where(inside, 1 - s * s, 1.0)
        val = np.where(inside, np.exp(-1.0 / q), 0.0)
        dval = np.where(inside, val * (-2 * s / q**2) * (2 / (b - a)), 0.0)
        return val, dval

    def value(self, x: np.ndarray) -> np.ndarray:
        """Evaluate at points ``x`` of shape ``(..., d)``."""
        out = np.ones(x.shape[:-1])
        for i in range(self.d):
            out = out * self.factor(i, x[..., i])[0]
        return out

    def antisymmetric_value(self, x: np.ndarray) -> np.ndarray:
        """``sum_p sgn(p) u(p . x)``; summands have disjoint supports."""
        out = np.zeros(x.shape[:-1])
        for p in permutations(self.d):
            out += parity(p) * self.value(x[..., list(p)])
        return out

    def bounding_box(self) -> tuple[float, float]:
        return self.intervals[0][0], self.intervals[-1][1]


def weyl_quotient(d: int, bump: ChamberBump, resolution: int = 64) -> float:
    """Tensor Gauss-Legendre value of ``int |grad u|^2 / int |u|^2 / |x|^2``."""
    if bump.d != d:
        raise ValueError("bump dimension mismatch")
    nodes, weights = np.polynomial.legendre.leggauss(resolution)
    axes, wts, vals, ders = [], [], [], []
    for i, (a, b) in enumerate(bump.intervals):
        x = (a + b) / 2 + (b - a) / 2 * nodes
        axes.append(x)
        wts.append(weights * (b - a) / 2)
        v, dv = bump.factor(i, x)
        vals.append(v)
        ders.append(dv)
    grids = np.meshgrid(*axes, indexing="ij")
    r2 = sum(g * g for g in grids)
    W = np.ones((resolution,) * d)
    U = np.ones((resolution,) * d)
    for i in range(d):
        shape = [1] * d
        shape[i] = resolution
        W = W * wts[i].reshape(shape)
        U = U * vals[i].reshape(shape)
    grad2 = np.zeros_like(U)
    for i in range(d):
        comp = np.ones((resolution,) * d)
        for j in range(d):
            shape = [1] * d
            shape[j] = resolution
            comp = comp * (ders[j] if j == i else vals[j]).reshape(shape)
        grad2 += comp * comp
    energy = float((W * grad2).sum())
    weighted = float((W * U * U / r2).sum())
    return energy / weighted


def random_chamber_bump(d: int, rng: np.random.Generator, span: float = 6.0) -> ChamberBump:
    """Ordered random intervals in ``[-span, span]`` whose product avoids 0."""
    while True:
        cuts = np.sort(rng.uniform(-span, span, size=2 * d))
        intervals = [(cuts[2 * i], cuts[2 * i + 1]) for i in range(d)]
        if min(b - a for a, b in intervals) < 0.05 or min(
            a1 - b0 for (_, b0), (a1, _) in zip(intervals, intervals[1:])
        ) < 1e-3:
            continue
        try:
            return ChamberBump(tuple(intervals))
        except ValueError:
            continue


# ---------------------------------------------------------------------------
# symmetrization by Monte Carlo
# ---------------------------------------------------------------------------


@dataclass
class SymmetrizationEstimate:
    full: float
    chamber: float
    full_se: float
    chamber_se: float
    diff: float
    diff_se: float


def symmetrization_estimate(
    bump: ChamberBump | None, d: int, samples: int, seed: int = 0, blocks: int = 16
) -> SymmetrizationEstimate:
    """Monte-Carlo estimates of ``int_{R^d} f`` and ``int_chamber f``.

    ``f = |antisymmetric extension of bump|^2`` (or 0 when ``bump`` is None).
    Samples are uniform in the cube spanned by the bump intervals; each block
    draws from its own spawned seed so results are reproducible.
    """
    lo, hi = bump.bounding_box() if bump is not None else (-1.0, 1.0)
    vol = (hi - lo) ** d
    children = np.random.SeedSequence(seed).spawn(blocks)
    per_block = [samples // blocks + (1 if k < samples % blocks else 0) for k in range(blocks)]
    f_vals, c_vals = [], []
    for child, count in zip(children, per_block):
        rng = np.random.default_rng(child)
        x = rng.uniform(lo, hi, size=(count, d))
        f = bump.antisymmetric_value(x) ** 2 if bump is not None else np.zeros(count)
        in_chamber = np.all(np.diff(x, axis=1) > 0, axis=1)
        f_vals.append(f)
        c_vals.append(f * in_chamber)
    f_all = np.concatenate(f_vals) * vol
    c_all = np.concatenate(c_vals) * vol
    fact = math.factorial(d)
    diff = f_all - fact * c_all
    n = len(f_all)

    def se(arr):
        return float(arr.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0

    return SymmetrizationEstimate(
        float(f_all.mean()), float(c_all.mean()), se(f_all), se(c_all), float(diff.mean()), se(diff)
    )


def symmetrization_check(d: int, samples: int, *, bump: ChamberBump | None = None, seed: int = 0, zero: bool = False) -> CheckRecord:
    """Both sides of ``int f = d! int_chamber f`` agree within 3 standard errors."""
    if bump is None and not zero:
        bump = default_bump(d)
    est = symmetrization_estimate(None if zero else bump, d, samples, seed)
    ok = abs(est.diff) <= 3 * est.diff_se
    return make_record(
        "symmetrization",
        d,
        est.full,
        math.factorial(d) * est.chamber,
        tolerance=3 * est.diff_se,
        params={"samples": samples, "ratio": est.full / est.chamber if est.chamber else 0.0},
        seed=seed,
        ok=ok,
    )


def default_bump(d: int) -> ChamberBump:
    return ChamberBump(tuple((2.0 * i + 1, 2.0 * i + 2) for i in range(d)))
