"""Command-line entry point.

Every subcommand except ``constants`` prints one JSON record per line and
exits 0 iff all records pass (1 otherwise; 2 on usage errors).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

import numpy as np

from . import constants as K
from .combinatorics import min_distinct_norm
from .continuum import (
    RadialProfile,
    angular_identity,
    angular_identity_symbolic,
    angular_eigenvalue,
    harmonic_degree,
    radial_quotient,
    random_chamber_bump,
    symmetrization_check,
    vandermonde,
    weyl_quotient,
)
from .exact_core import poly_laplacian
from .identities import identity_suite
from .lattice import (
    ConvergenceError,
    LatticeFunction,
    estimate_sharp_constant,
    fundamental_domain_sum,
    norm2,
    random_antisymmetric,
    verify_transform,
)
from .report import DEFAULT_DIGITS, FAIL, CheckRecord, error_record, make_record, timed
from .torus import poincare_optimizer, poincare_quotient, quadrature_pair

UPPER_SLACK = 1e-8


def _guard(records: list, check: str, d: int, seed: int, fn, *args, **kwargs):
    """Run ``fn``; on an exception append an error record instead."""
    try:
        out = fn(*args, **kwargs)
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        records.append(error_record(check, d, exc, seed=seed))
        return None
    if isinstance(out, CheckRecord):
        records.append(out)
    elif isinstance(out, list):
        records.extend(out)
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def lattice_records(d: int, R: int, tol: float, antisym: bool = True, *, seed: int = 0, digits: int = DEFAULT_DIGITS, timing: bool = False):
    records: list = []
    with timed(records, timing):
        try:
            est = estimate_sharp_constant(d, R, tol, antisym)
        except (ConvergenceError, ValueError) as exc:
            records.append(error_record("lattice_eigenvalue", d, exc, params={"R": R}, seed=seed))
            return records
        upper = float(K.upper_bounds(d)[0]) * (1 + UPPER_SLACK)
        lower = float(K.lattice_constant(d)) if antisym else 0.0
        orbit_radius = math.ceil(d / 2)
        params = {
            "R": R,
            "antisym": "true" if antisym else "false",
            "residual": est.residual,
            "iterations": est.iterations,
            "basis_size": est.basis_size,
            "tol": tol,
        }
        if R >= orbit_radius:
            rec = make_record("lattice_eigenvalue", d, est.value, (lower, upper), relation="in", params=params, seed=seed, digits=digits)
        else:
            rec = make_record("lattice_eigenvalue", d, est.value, lower, relation=">=", params=params, seed=seed, digits=digits)
        if est.residual > tol:
            rec.status = FAIL
        records.append(rec)
    return records


def torus_records(d: int, M: int, *, seed: int = 0, digits: int = DEFAULT_DIGITS, timing: bool = False, rtol: float = 1e-4):
    records: list = []
    with timed(records, timing):
        psi = poincare_optimizer(d)
        records.append(make_record("poincare_sharpness", d, poincare_quotient(psi), K.poincare_constant(d), seed=seed))
        try:
            coarse, fine, rel = quadrature_pair(psi, M)
        except Exception as exc:  # noqa: BLE001
            records.append(error_record("torus_hardy", d, exc, params={"M": M}, seed=seed))
            return records
        energy = float(psi.gradient_energy())
        value = energy / coarse
        lo = float(K.torus_constant(d)) - 1e-3
        hi = float(K.upper_bounds(d)[1]) + 1e-3
        records.append(
            make_record("torus_hardy", d, value, (lo, hi), relation="in", params={"M": M, "value_2M": energy / fine}, seed=seed, digits=digits)
        )
        records.append(
            make_record("torus_quadrature_agreement", d, rel, rtol, relation="<=", params={"M": M, "coarse": coarse, "fine": fine}, seed=seed, digits=digits)
        )
        floor = float(psi.l2_norm2()) / d
        records.append(
            make_record("torus_weight_floor", d, coarse, floor * (1 - 1e-6), relation=">=", params={"M": M}, seed=seed, digits=digits)
        )
    return records


def continuum_records(d: int, profile: str, ratio: float, *, tol: float = 1e-10, seed: int = 0, digits: int = DEFAULT_DIGITS, timing: bool = False):
    records: list = []
    with timed(records, timing):
        if d <= 5:
            lap = poly_laplacian(vandermonde(d))
            records.append(make_record("vandermonde_harmonic", d, repr(lap), "0", ok=lap.is_zero(), seed=seed))
        records.append(angular_identity(d))
        records.append(angular_identity_symbolic())
        hl = float(K.hl_constant(d))
        if profile == "gaussian":
            l, L = harmonic_degree(d), angular_eigenvalue(d)
            s = Fraction(2 * l + d - 2, 2)
            closed = l * l + L - 2 * l * s + s * (s + 1)
            _guard(
                records, "radial_quotient", d, seed,
                lambda: make_record("radial_quotient", d, radial_quotient(d, RadialProfile.gaussian(d), tol), float(closed),
                                    tolerance=1e-8, params={"profile": "gaussian", "closed_form": closed}, seed=seed, digits=digits),
            )
        else:
            _guard(
                records, "radial_quotient", d, seed,
                lambda: make_record("radial_quotient", d, radial_quotient(d, RadialProfile.plateau(d, ratio), tol), hl * (1 - 1e-6),
                                    relation=">=", params={"profile": "plateau", "ratio": ratio}, seed=seed, digits=digits),
            )
    return records


def identities_records(d: int, trials: int, seed: int, *, timing: bool = False):
    records: list = []
    with timed(records, timing):
        _guard(records, "identities", d, seed, identity_suite, d, trials, seed)
    return records


def transform_records(d: int, trials: int, seed: int, *, timing: bool = False):
    rng = random.Random(seed)
    records: list = []
    with timed(records, timing):
        for trial in range(trials):
            u = random_antisymmetric(d, rng)
            rec = verify_transform(u, seed=seed)
            rec.params["trial"] = trial
            records.append(rec)
            f = {n: v * v / norm2(n) for n, v in u.values.items()}
            try:
                rec = fundamental_domain_sum(f, d, seed=seed)
            except ValueError as exc:
                rec = error_record("fundamental_domain_sum", d, exc, seed=seed)
            rec.params["trial"] = trial
            records.append(rec)
    return records


def poincare_oracle_records(dmax: int = 8, *, timing: bool = False):
    records: list = []
    with timed(records, timing):
        for d in range(2, dmax + 1):
            records.append(make_record("poincare_vs_bruteforce", d, K.poincare_constant(d), min_distinct_norm(d)))
    return records


def weyl_records(d: int, bumps: int, seed: int, resolution: int = 48, *, digits: int = DEFAULT_DIGITS, timing: bool = False):
    rng = np.random.default_rng(seed)
    floor = float(K.hl_constant(d)) * (1 - 1e-6)
    records: list = []
    with timed(records, timing):
        for k in range(bumps):
            bump = random_chamber_bump(d, rng)
            value = weyl_quotient(d, bump, resolution)
            records.append(
                make_record("weyl_quotient", d, value, floor, relation=">=", params={"bump": k, "intervals": str([tuple(round(v, 6) for v in iv) for iv in bump.intervals])}, seed=seed, digits=digits)
            )
    return records


def all_records(quick: bool, seed: int, digits: int, timing: bool) -> list:
    trials = 20 if quick else 100
    records = []
    records += poincare_oracle_records(timing=timing)
    for d in range(2, 6):
        records += identities_records(d, trials, seed, timing=timing)
    for d in (2, 3):
        records += transform_records(d, trials, seed, timing=timing)
    for R in ((3, 10) if quick else (3, 10, 15, 20)):
        records += lattice_records(2, R, 1e-10, seed=seed, digits=digits, timing=timing)
    records += lattice_records(3, 6, 1e-10, seed=seed, digits=digits, timing=timing)
    records += torus_records(2, 128 if quick else 256, seed=seed, digits=digits, timing=timing)
    records += torus_records(3, 32 if quick else 64, seed=seed, digits=digits, timing=timing)
    for d in (2, 3):
        records += continuum_records(d, "gaussian", 0, seed=seed, digits=digits, timing=timing)
        for ratio in (10**1.5, 1e3, 1e6):
            records += continuum_records(d, "plateau", ratio, seed=seed, digits=digits, timing=timing)
        records += weyl_records(d, 3 if quick else 10, seed, digits=digits, timing=timing)
        with timed(records, timing):
            records.append(symmetrization_check(d, 10**5 if quick else 10**6, seed=seed))
    return records


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="significant digits for decimal output")
    common.add_argument("--tol", type=float, default=None, help="tolerance (lattice residual, torus M/2M agreement, continuum quadrature)")
    common.add_argument("--timing", action="store_true", help="fill runtime_ms (reports are then not byte-reproducible)")

    parser = argparse.ArgumentParser(prog="antisym-hardy", description="Verification suites for antisymmetric Hardy inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="table of exact constants")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--dmin", type=int, default=2)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("lattice", parents=[common], help="box eigenvalue estimate of the lattice constant")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--no-antisym", action="store_true")

    p = sub.add_parser("torus", parents=[common], help="Poincare optimizer and torus Hardy sandwich")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--M", type=int, required=True)

    p = sub.add_parser("continuum", parents=[common], help="harmonicity and radial quotients")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--profile", choices=("gaussian", "plateau"), required=True)
    p.add_argument("--ratio", type=float, default=1e6, help="b/a for the plateau profile")

    for name, helptext in (("identities", "exact proof identities at random rational points"), ("transform", "exact lattice-to-torus transfer identities")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("all", parents=[common], help="every suite")
    p.add_argument("--quick", action="store_true")
    return parser


def _emit(records, out) -> int:
    for rec in records:
        out.write(rec.to_json() + "\n")
    return 0 if all(r.passed for r in records) else 1


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    common = {"seed": args.seed, "timing": args.timing}

    if args.command == "constants":
        if args.dmax < args.dmin or args.dmin < 2:
            parser.error("need 2 <= dmin <= dmax")
        if args.format == "csv":
            out.write(K.constants_csv(args.dmax, args.dmin))
        else:
            for row in K.table_rows(args.dmax, args.dmin):
                out.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
        return 0

    if args.command == "lattice":
        if not 2 <= args.d <= 5:
            parser.error("lattice estimates support 2 <= d <= 5")
        records = lattice_records(args.d, args.R, args.tol or 1e-10, not args.no_antisym, digits=args.digits, **common)
    elif args.command == "torus":
        records = torus_records(args.d, args.M, digits=args.digits, rtol=args.tol or 1e-4, **common)
    elif args.command == "continuum":
        if args.d < 2:
            parser.error("d must be at least 2")
        records = continuum_records(args.d, args.profile, args.ratio, tol=args.tol or 1e-10, digits=args.digits, **common)
    elif args.command == "identities":
        records = identities_records(args.d, args.trials, args.seed, timing=args.timing)
    elif args.command == "transform":
        records = transform_records(args.d, args.trials, args.seed, timing=args.timing)
    else:
        records = all_records(args.quick, args.seed, args.digits, args.timing)
    return _emit(records, out)


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
