"""Discrete Hardy forms on the integer lattice.

Exact forms work on :class:`LatticeFunction` values that are ``Fraction`` or
:class:`~antisym_hardy.exact_core.GaussianRational`. The eigenvalue estimate
of the sharp constant truncates to a box ``max |n_i| <= R`` and solves a
sparse generalized eigenproblem in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Mapping

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .combinatorics import antisymmetrize, is_antisymmetric, permutations, parity, sort_with_sign, act
from .exact_core import I, GaussianRational, abs2, conj, format_scalar, parse_rational
from .report import CheckRecord, make_record


def norm2(n) -> int:
    return sum(v * v for v in n)


def unit(d: int, j: int) -> tuple:
    e = [0] * d
    e[j] = 1
    return tuple(e)


def shift(n, e, sign=1) -> tuple:
    return tuple(a + sign * b for a, b in zip(n, e))


@dataclass
class LatticeFunction:
    """Finitely supported function on Z^d; missing keys mean zero."""

    d: int
    values: dict = field(default_factory=dict)
    antisymmetric: bool = False

    def __post_init__(self):
        self.values = {tuple(k): v for k, v in self.values.items() if v}
        for k in self.values:
            if len(k) != self.d:
                raise ValueError(f"point {k} is not {self.d}-dimensional")
        if self.antisymmetric and not is_antisymmetric(self.values, self.d):
            raise ValueError("values are flagged antisymmetric but are not")

    def __getitem__(self, n):
        return self.values.get(tuple(n), 0)

    def support(self):
        return self.values.keys()

    def scale(self, c) -> "LatticeFunction":
        return LatticeFunction(self.d, {k: c * v for k, v in self.values.items()}, self.antisymmetric)

    def permuted(self, p) -> "LatticeFunction":
        """``(u o p)(n) = u(p . n)``."""
        inv = [0] * self.d
        for i, pi in enumerate(p):
            inv[pi] = i
        return LatticeFunction(self.d, {act(inv, n): v for n, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values


def discrete_gradient(u: LatticeFunction) -> list[LatticeFunction]:
    """Components ``D_j u(n) = u(n) - u(n - e_j)``."""
    comps = []
    for j in range(u.d):
        e = unit(u.d, j)
        out: dict = {}
        for n, v in u.values.items():
            out[n] = out.get(n, 0) + v
            m = shift(n, e)
            out[m] = out.get(m, 0) - v
        comps.append(LatticeFunction(u.d, out))
    return comps


def dirichlet_energy(u: LatticeFunction):
    """``sum_n sum_j |D_j u(n)|^2``."""
    total = 0
    for comp in discrete_gradient(u):
        for v in comp.values.values():
            total = total + abs2(v)
    return total


def weighted_norm(u: LatticeFunction):
    """``sum_{n != 0} |u(n)|^2 / |n|^2``; requires ``u(0) = 0``."""
    if u[(0,) * u.d]:
        raise ValueError("u(0) must vanish for the Hardy weight")
    total = 0
    for n, v in u.values.items():
        total = total + abs2(v) / norm2(n)
    return total


def hardy_quotient(u: LatticeFunction):
    if u.is_zero():
        raise ValueError("Hardy quotient of the zero function")
    den = weighted_norm(u)
    return dirichlet_energy(u) / den


def orbit_function(orbit) -> LatticeFunction:
    """Lattice function with the values of a :class:`SignedOrbit`."""
    return LatticeFunction(orbit.d, {n: Fraction(s) for n, s in orbit.entries.items()}, antisymmetric=True)


# ---------------------------------------------------------------------------
# box truncation and eigenvalue estimate
# ---------------------------------------------------------------------------


@dataclass
class BoxProblem:
    """Truncated generalized eigenproblem ``A v = lam B v``.

    With ``antisym`` set and ``representation == "chamber"``, the basis is the
    strictly increasing tuples in the box; an antisymmetric function is fixed
    by those values and both forms divided by ``d!`` reduce to the Dirichlet
    Laplacian of the chamber. Otherwise the basis is every box point except
    the origin.
    """

    d: int
    R: int
    antisym: bool
    representation: str
    basis: list
    A: sp.csr_matrix
    b: np.ndarray  # diagonal of B, 1/|n|^2
    project: Callable[[np.ndarray], np.ndarray] | None = None

    @property
    def size(self) -> int:
        return len(self.basis)


MAX_BASIS = 200_000
MAX_FULL_BOX = 10**6


def _laplacian(basis: list, d: int) -> sp.csr_matrix:
    index = {n: k for k, n in enumerate(basis)}
    rows, cols = [], []
    for k, n in enumerate(basis):
        for j in range(d):
            m = shift(n, unit(d, j))
            other = index.get(m)
            if other is not None:
                rows += [k, other]
                cols += [other, k]
    size = len(basis)
    adj = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    return (2 * d * sp.identity(size, format="csr") - adj).tocsr()


def _full_box_basis(d: int, R: int) -> list:
    origin = (0,) * d
    return [n for n in product(range(-R, R + 1), repeat=d) if n != origin]


def _antisym_projector(d: int, R: int) -> Callable[[np.ndarray], np.ndarray]:
    """Antisymmetrizer acting on vectors indexed by the full box minus 0."""
    shape = (2 * R + 1,) * d
    centre = np.ravel_multi_index((R,) * d, shape)
    keep = np.ones(np.prod(shape), dtype=bool)
    keep[centre] = False
    perms = [(p, parity(p)) for p in permutations(d)]
    scale = 1.0 / math.factorial(d)

    def project(X: np.ndarray) -> np.ndarray:
        X2 = X.reshape(len(X), -1) if X.ndim == 2 else X[:, None]
        out = np.empty_like(X2)
        for col in range(X2.shape[1]):
            grid = np.zeros(np.prod(shape))
            grid[keep] = X2[:, col]
            grid = grid.reshape(shape)
            acc = np.zeros(shape)
            for p, sign in perms:
                acc += sign * np.transpose(grid, p)
            out[:, col] = (scale * acc).reshape(-1)[keep]
        return out if X.ndim == 2 else out[:, 0]

    return project


def box_problem(d: int, R: int, antisym: bool = True, representation: str = "chamber") -> BoxProblem:
    if d < 2 or R < 1:
        raise ValueError("need d >= 2 and R >= 1")
    if representation not in ("chamber", "full"):
        raise ValueError(f"unknown representation {representation!r}")
    project = None
    if antisym and representation == "chamber":
        basis = list(combinations(range(-R, R + 1), d))
    else:
        if (2 * R + 1) ** d > MAX_FULL_BOX:
            raise ValueError("full box exceeds the materialization limit; use the chamber representation")
        basis = _full_box_basis(d, R)
        if antisym:
            project = _antisym_projector(d, R)
    if len(basis) > MAX_BASIS:
        raise ValueError(f"basis size {len(basis)} exceeds {MAX_BASIS}")
    A = _laplacian(basis, d)
    b = np.array([1.0 / norm2(n) for n in basis])
    return BoxProblem(d, R, antisym, representation, basis, A, b, project)


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, value: float, residual: float, iterations: int):
        super().__init__(f"{message} (last residual {residual:.3e} after {iterations} iterations)")
        self.value = value
        self.residual = residual
        self.iterations = iterations


@dataclass
class EigenEstimate:
    value: float
    residual: float
    iterations: int
    basis_size: int
    vector: np.ndarray = field(repr=False)


def smallest_generalized_eigenpair(
    A: sp.spmatrix,
    b: np.ndarray,
    tol: float = 1e-10,
    *,
    block: int = 6,
    maxiter: int = 20_000,
    project: Callable[[np.ndarray], np.ndarray] | None = None,
    seed: int = 0,
) -> EigenEstimate:
    """Block inverse iteration with B-orthonormal Rayleigh-Ritz.

    ``B = diag(b)``. Stops when ``||A v - lam B v|| <= tol ||B v||``. The
    optional ``project`` is applied to the iterate block every step.
    """
    n = A.shape[0]
    k = max(1, min(block, n))
    lu = spla.splu(sp.csc_matrix(A))
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, k))
    sqrt_b = np.sqrt(b)
    lam, res = math.nan, math.inf
    for it in range(1, maxiter + 1):
        if project is not None:
            X = project(X)
        Q, _ = np.linalg.qr(sqrt_b[:, None] * X)
        X = Q / sqrt_b[:, None]
        AX = A @ X
        H = X.T @ AX
        theta, C = scipy.linalg.eigh((H + H.T) / 2)
        X = X @ C
        AX = AX @ C
        v = X[:, 0]
        lam = float(theta[0])
        Bv = b * v
        res = float(np.linalg.norm(AX[:, 0] - lam * Bv) / np.linalg.norm(Bv))
        if res <= tol:
            return EigenEstimate(lam, res, it, n, v)
        X = lu.solve(b[:, None] * X)
    raise ConvergenceError("inverse iteration did not converge", lam, res, maxiter)


def estimate_sharp_constant(
    d: int,
    R: int,
    tol: float = 1e-10,
    antisym: bool = True,
    *,
    representation: str = "chamber",
    maxiter: int = 20_000,
) -> EigenEstimate:
    """Smallest Hardy quotient over functions supported in the box of radius R."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    prob = box_problem(d, R, antisym, representation)
    return smallest_generalized_eigenpair(prob.A, prob.b, tol, project=prob.project, maxiter=maxiter)


def dense_oracle(prob: BoxProblem) -> float:
    """Smallest eigenvalue from a dense LAPACK generalized symmetric solve."""
    if prob.project is not None:
        raise ValueError("dense oracle works on the chamber or non-antisymmetric basis")
    vals = scipy.linalg.eigh(prob.A.toarray(), np.diag(prob.b), eigvals_only=True, subset_by_index=[0, 0])
    return float(vals[0])


def chamber_extension(prob: BoxProblem, v: np.ndarray) -> LatticeFunction:
    """Materialize the antisymmetric function with chamber values ``v``."""
    if not (prob.antisym and prob.representation == "chamber"):
        raise ValueError("only chamber problems have an antisymmetric extension")
    out = {}
    for n, val in zip(prob.basis, v):
        if val == 0:
            continue
        for p in permutations(prob.d):
            out[act(p, n)] = parity(p) * float(val)
    return LatticeFunction(prob.d, out)


# ---------------------------------------------------------------------------
# exact verifications
# ---------------------------------------------------------------------------


def fourier_coefficients(u: LatticeFunction) -> dict:
    """``a(n) = i |n|^{-2} u(n)``, the coefficients of the torus potential."""
    if u[(0,) * u.d]:
        raise ValueError("u(0) must vanish")
    return {n: I * v / norm2(n) for n, v in u.values.items()}


def fourier_side_energy(a: Mapping, d: int):
    """``4 int |Lap psi|^2 omega`` via ``omega = sum_j (2 - e^{ix_j} - e^{-ix_j})/4``.

    With ``b(n) = -|n|^2 a(n)`` the Laplacian's coefficients, orthogonality
    of exponentials reduces the integral to
    ``sum_j [2 sum |b|^2 - 2 Re sum_m b(m + e_j) conj(b(m))]``.
    """
    b = {n: -norm2(n) * v for n, v in a.items()}
    sq = sum((abs2(v) for v in b.values()), Fraction(0))
    total = Fraction(0)
    for j in range(d):
        e = unit(d, j)
        corr = GaussianRational(0, 0)
        for m, bm in b.items():
            up = b.get(shift(m, e))
            if up is not None:
                corr = corr + up * conj(bm)
        total += 2 * sq - 2 * GaussianRational._coerce(corr).re
    return total


def verify_transform(u: LatticeFunction, *, seed: int = 0) -> CheckRecord:
    """Exact check of the lattice-to-torus transfer identities for ``u``.

    (i)  ``sum |u|^2/|n|^2 == sum |n|^2 |a(n)|^2``
    (ii) ``sum |Du|^2 == 4 int |Lap psi|^2 omega`` on the Fourier side.
    """
    if not is_antisymmetric(u.values, u.d):
        raise ValueError("verify_transform needs an antisymmetric u")
    a = fourier_coefficients(u)
    lhs = (weighted_norm(u), dirichlet_energy(u))
    grad_side = sum((norm2(n) * abs2(v) for n, v in a.items()), Fraction(0))
    rhs = (grad_side, fourier_side_energy(a, u.d))
    return make_record(
        "lattice_transform",
        u.d,
        lhs,
        rhs,
        params={"support": len(u.values), "identities": "weighted_norm, energy"},
        seed=seed,
    )


def fundamental_domain_sum(f: Mapping, d: int, *, seed: int = 0) -> CheckRecord:
    """Exact check ``sum_{Z^d} f = d! sum_{n_1 < ... < n_d} f``.

    ``f`` must be symmetric and vanish where two coordinates coincide;
    violations raise ``ValueError`` naming the witness point.
    """
    for n, v in f.items():
        if not v:
            continue
        if len(set(n)) < d:
            raise ValueError(f"f does not vanish on the diagonal at {n}")
        for p in permutations(d):
            m = act(p, n)
            if f.get(m, 0) != v:
                raise ValueError(f"f is not symmetric: f{n} != f{m}")
    full = sum(f.values(), Fraction(0))
    chamber = sum((v for n, v in f.items() if all(a < b for a, b in zip(n, n[1:]))), Fraction(0))
    return make_record("fundamental_domain_sum", d, full, math.factorial(d) * chamber, seed=seed)


def random_antisymmetric(d: int, rng, *, points: int = 4, radius: int = 3, bound: int = 1000) -> LatticeFunction:
    """Antisymmetrized random sparse data with rational values.

    ``rng`` is a :class:`random.Random`. Numerators and denominators are
    bounded by ``bound``.
    """
    raw = {}
    for _ in range(points):
        n = tuple(rng.randint(-radius, radius) for _ in range(d))
        raw[n] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return LatticeFunction(d, antisymmetrize(raw, d), antisymmetric=True)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def dumps_function(values: Mapping, d: int) -> str:
    """Lines ``n_1 ... n_d  re  im``."""
    lines = []
    for n in sorted(values):
        v = values[n]
        if isinstance(v, GaussianRational):
            re, im = v.re, v.im
        elif isinstance(v, complex):
            re, im = v.real, v.imag
        else:
            re, im = v, 0
        lines.append(" ".join(str(c) for c in n) + "  " + format_scalar(re) + "  " + format_scalar(im))
    return "\n".join(lines) + ("\n" if lines else "")


def loads_function(text: str, d: int | None = None) -> dict:
    values = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if d is None:
            d = len(parts) - 2
        if len(parts) != d + 2:
            raise ValueError(f"malformed line {raw!r}")
        n = tuple(int(p) for p in parts[:d])
        re_s, im_s = parts[d], parts[d + 1]
        if any(ch in re_s + im_s for ch in ".eE") and "/" not in re_s + im_s:
            re, im = float(re_s), float(im_s)
            values[n] = complex(re, im) if im else re
        else:
            re, im = parse_rational(re_s), parse_rational(im_s)
            values[n] = GaussianRational(re, im) if im else re
    return values
