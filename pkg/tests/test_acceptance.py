"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected and repeated in the pytest terminal summary. Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from antisym_hardy import constants as K
from antisym_hardy.combinatorics import min_distinct_norm, signed_orbit
from antisym_hardy.continuum import (
    RadialProfile,
    angular_identity,
    angular_identity_symbolic,
    angular_eigenvalue,
    harmonic_degree,
    radial_quotient,
    random_chamber_bump,
    vandermonde,
    weyl_quotient,
)
from antisym_hardy.exact_core import poly_laplacian
from antisym_hardy.identities import abc_residual, cubic_residual, identity_suite
from antisym_hardy.lattice import (
    box_problem,
    dense_oracle,
    estimate_sharp_constant,
    hardy_quotient,
    orbit_function,
    random_antisymmetric as random_lattice,
    verify_transform,
)
from antisym_hardy.torus import (
    poincare_optimizer,
    poincare_quotient,
    random_antisymmetric as random_trig,
    torus_hardy_details,
)

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} | {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_constants_oracle():
    t0 = time.perf_counter()
    pairs = [(K.poincare_constant(d), min_distinct_norm(d)) for d in range(2, 9)]
    elapsed = time.perf_counter() - t0
    expected = [1, 2, 6, 10, 19, 28, 44]
    ok = all(a == b == e for (a, b), e in zip(pairs, expected)) and elapsed < 30
    report(1, "C_P closed form == brute force, d=2..8", ok, f"values {[int(a) for a, _ in pairs]}, {elapsed:.2f}s < 30s")


def test_criterion_02_poincare_sharpness():
    exact = all(poincare_quotient(poincare_optimizer(d)) == K.poincare_constant(d) for d in range(2, 7))
    worst = {}
    for d in (2, 3, 4):
        rng = random.Random(1000 + d)
        qs = []
        while len(qs) < 100:
            psi = random_trig(d, rng)
            if psi.coeffs:
                qs.append(poincare_quotient(psi) - K.poincare_constant(d))
        worst[d] = min(qs)
    ok = exact and all(v >= 0 for v in worst.values())
    report(2, "optimizer quotient == C_P (d=2..6); 100 random >= C_P (d=2..4)", ok,
           f"optimizer exact={exact}, min excess {{{', '.join(f'{d}: {v}' for d, v in worst.items())}}}")


def test_criterion_03_orbit_quotient():
    vals = [hardy_quotient(orbit_function(signed_orbit(d))) for d in range(2, 6)]
    ok = vals == [2 * d * K.poincare_constant(d) for d in range(2, 6)] == [4, 12, 48, 100]
    report(3, "orbit Hardy quotient == 2d C_P, d=2..5", ok, f"values {[int(v) for v in vals]}")


def test_criterion_04_transform():
    t0 = time.perf_counter()
    counts = {}
    for d in (2, 3):
        rng = random.Random(4000 + d)
        counts[d] = sum(verify_transform(random_lattice(d, rng)).passed for _ in range(100))
    elapsed = time.perf_counter() - t0
    ok = counts == {2: 100, 3: 100} and elapsed < 60
    report(4, "lattice-to-torus identities exact on 100 random u, d=2,3", ok, f"passed {counts}, {elapsed:.2f}s < 60s")


def test_criterion_05_lattice_sandwich():
    t0 = time.perf_counter()
    cl2, up2 = float(K.lattice_constant(2)), float(K.upper_bounds(2)[0])
    est = {R: estimate_sharp_constant(2, R, 1e-10) for R in (3, 10, 15, 20)}
    lam = {R: e.value for R, e in est.items()}
    oracle = dense_oracle(box_problem(2, 3))
    e3 = estimate_sharp_constant(3, 6, 1e-10)
    elapsed = time.perf_counter() - t0
    checks = {
        "lower": all(v >= cl2 for v in lam.values()),
        "monotone": lam[20] <= lam[15] <= lam[10] <= up2 + 1e-8,
        "residual": all(e.residual <= 1e-10 for e in est.values()) and e3.residual <= 1e-10,
        "oracle": abs(lam[3] - oracle) <= 1e-10,
        "d3": float(K.lattice_constant(3)) <= e3.value <= float(K.upper_bounds(3)[0]) + 1e-8,
        "time": elapsed < 120,
    }
    report(5, "lattice eigenvalue sandwich", all(checks.values()),
           f"d=2 lam(R) {{{', '.join(f'{R}: {v:.6f}' for R, v in lam.items())}}}, |lam(3)-dense|={abs(lam[3] - oracle):.1e}, "
           f"d=3 R=6 lam={e3.value:.6f} in [{float(K.lattice_constant(3)):.4f}, 12], {elapsed:.1f}s; failed={[k for k, v in checks.items() if not v]}")


def test_criterion_06_identity_suite():
    t0 = time.perf_counter()
    counts = {}
    for d in range(2, 6):
        recs = identity_suite(d, 100, seed=600 + d)
        counts[d] = (sum(r.passed for r in recs), len(recs))
    elapsed = time.perf_counter() - t0
    polys = cubic_residual().is_zero() and abc_residual().is_zero()
    ok = all(p == n == 800 for p, n in counts.values()) and polys and elapsed < 120
    report(6, "identity suite exact, 100 trials per d=2..5", ok,
           f"passed/total {counts}, polynomial residuals zero={polys}, {elapsed:.1f}s < 120s")


def test_criterion_07_harmonicity():
    harmonic = all(poly_laplacian(vandermonde(d)).is_zero() for d in range(2, 6))
    symbolic = angular_identity_symbolic().passed and all(angular_identity(d).passed for d in range(2, 20))
    report(7, "Vandermonde harmonic d=2..5; angular identity symbolic in d", harmonic and symbolic,
           f"harmonic={harmonic}, symbolic={symbolic}")


def _gaussian_gamma_oracle(d: int) -> float:
    # g = r^l exp(-r^2); K(k) = int_0^inf r^k exp(-2 r^2) dr
    l, L = harmonic_degree(d), angular_eigenvalue(d)

    def Kk(k):
        return math.gamma((k + 1) / 2) / (2 * 2 ** ((k + 1) / 2))

    m = 2 * l + d - 3
    return ((l * l + L) * Kk(m) - 4 * l * Kk(m + 2) + 4 * Kk(m + 4)) / Kk(m)


def test_criterion_08_continuum_trend():
    ratios = (10**1.5, 1e3, 1e6)
    ok, parts = True, []
    for d in (2, 3):
        hl = float(K.hl_constant(d))
        gaps = [radial_quotient(d, RadialProfile.plateau(d, r)) - hl for r in ratios]
        above = all(g >= -1e-6 * hl for g in gaps)
        decreasing = gaps[0] > gaps[1] > gaps[2]
        gq = radial_quotient(d, RadialProfile.gaussian(d))
        oracle = _gaussian_gamma_oracle(d)
        ok &= above and decreasing and abs(gq - oracle) <= 1e-8
        parts.append(f"d={d} gaps {[f'{g:.4f}' for g in gaps]} gaussian {gq:.10f} vs {oracle:.10f}")
    report(8, "plateau quotients above HL with shrinking gap; gaussian == Gamma oracle", ok, "; ".join(parts))


def test_criterion_09_weyl_bumps():
    worst = {}
    for d in (2, 3):
        rng = np.random.default_rng(900 + d)
        floor = float(K.hl_constant(d))
        worst[d] = min(weyl_quotient(d, random_chamber_bump(d, rng)) / floor for _ in range(10))
    ok = all(v >= 1 - 1e-6 for v in worst.values())
    report(9, "10 random chamber bumps per d=2,3 above HL", ok,
           f"min quotient/HL {{{', '.join(f'{d}: {v:.4f}' for d, v in worst.items())}}}")


def test_criterion_10_torus_sandwich():
    ok, parts = True, []
    for d, M in ((2, 256), (3, 64)):
        det = torus_hardy_details(poincare_optimizer(d), M, rtol=None)
        lo = float(K.torus_constant(d)) - 1e-3
        hi = float(K.upper_bounds(d)[1]) + 1e-3
        inside = lo <= det.value <= hi
        ok &= inside and det.rel_diff <= 1e-4
        parts.append(f"d={d} M={M}: {det.value:.8f} in [{lo:.4f}, {hi:.4f}], M/2M rel diff {det.rel_diff:.1e}")
    report(10, "torus Hardy quotient of optimizer in [C_T, d C_P]", ok, "; ".join(parts))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
