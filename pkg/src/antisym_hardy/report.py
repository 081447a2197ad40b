"""Uniform pass/fail records emitted by every verification routine."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .exact_core import GaussianRational, format_rational, format_scalar

PASS, FAIL, ERROR = "pass", "fail", "error"
EXACT = "exact"

# Decimal rendering precision for floats; exact values are always "p/q".
DEFAULT_DIGITS = 12


def render(value, digits: int = DEFAULT_DIGITS) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, Fraction)):
        return format_rational(Fraction(value))
    if isinstance(value, (GaussianRational, complex)):
        return format_scalar(value, digits)
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(render(v, digits) for v in value) + "]"
    return format(float(value), f".{digits}g")


@dataclass
class CheckRecord:
    """Result of one verification.

    ``params["relation"]`` selects how lhs and rhs are compared: ``"=="``
    (default; pass iff ``|lhs - rhs| <= tolerance`` or exact equality),
    ``">="``, ``"<="`` or ``"in"`` (rhs is a closed interval).
    """

    check: str
    d: int
    params: dict = field(default_factory=dict)
    status: str = PASS
    lhs: str = ""
    rhs: str = ""
    tolerance: str = EXACT
    seed: int = 0
    runtime_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _compare(lhs, rhs, relation: str, tolerance) -> bool:
    if relation == "==":
        if tolerance is None:
            return lhs == rhs
        return abs(lhs - rhs) <= tolerance
    tol = 0 if tolerance is None else tolerance
    if relation == ">=":
        return lhs >= rhs - tol
    if relation == "<=":
        return lhs <= rhs + tol
    if relation == "in":
        lo, hi = rhs
        return lo - tol <= lhs <= hi + tol
    raise ValueError(f"unknown relation {relation!r}")


def make_record(
    check: str,
    d: int,
    lhs,
    rhs,
    *,
    relation: str = "==",
    tolerance=None,
    params: dict | None = None,
    seed: int = 0,
    digits: int = DEFAULT_DIGITS,
    ok: bool | None = None,
) -> CheckRecord:
    """Build a record, deciding the status from ``lhs relation rhs``.

    ``tolerance=None`` means exact comparison. ``ok`` overrides the
    comparison for checks whose verdict is computed elsewhere.
    """
    params = dict(params or {})
    if relation != "==":
        params["relation"] = relation
    if ok is None:
        ok = _compare(lhs, rhs, relation, tolerance)
    return CheckRecord(
        check=check,
        d=d,
        params={k: render(v, digits) if not isinstance(v, (int, str)) else v for k, v in params.items()},
        status=PASS if ok else FAIL,
        lhs=render(lhs, digits),
        rhs=render(rhs, digits),
        tolerance=EXACT if tolerance is None else render(tolerance, digits),
        seed=seed,
    )


def error_record(check: str, d: int, exc: BaseException, *, params=None, seed: int = 0) -> CheckRecord:
    p = dict(params or {})
    p["error"] = f"{type(exc).__name__}: {exc}"
    return CheckRecord(check=check, d=d, params=p, status=ERROR, lhs="", rhs="", seed=seed)


@contextmanager
def timed(records: list, enabled: bool = True):
    """Stamp ``runtime_ms`` on every record appended inside the block."""
    start = len(records)
    t0 = time.perf_counter()
    yield
    ms = int(round((time.perf_counter() - t0) * 1000)) if enabled else 0
    for rec in records[start:]:
        rec.runtime_ms = ms
