"""Exact arithmetic backbone.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). On top of that this module provides Gaussian
rationals, sparse multivariate polynomials with exact coefficients, and
first-order jets for exact differentiation of rational expression trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """Canonical ``"p/q"`` rendering; ``"p"`` alone when ``q == 1``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @staticmethod
    def _coerce(other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = other.abs2()
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"


I = GaussianRational(0, 1)


def abs2(z):
    """``|z|**2`` for exact reals, Gaussian rationals and Python numbers."""
    if isinstance(z, GaussianRational):
        return z.abs2()
    if isinstance(z, complex):
        return z.real * z.real + z.imag * z.imag
    return z * z


def conj(z):
    if isinstance(z, (GaussianRational, complex)):
        return z.conjugate()
    return z


def format_scalar(z, digits: int = 12) -> str:
    if isinstance(z, GaussianRational):
        if z.im == 0:
            return format_rational(z.re)
        return f"{format_rational(z.re)}{'+' if z.im >= 0 else '-'}{format_rational(abs(z.im))}i"
    if isinstance(z, (int, Fraction)):
        return format_rational(Fraction(z))
    if isinstance(z, complex):
        return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"
    return f"{float(z):.{digits}g}"


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


Exponent = tuple


class MultiPoly:
    """Polynomial in ``nvars`` variables with exact rational coefficients.

    Terms are stored as ``{exponent tuple: Fraction}`` with dense exponent
    vectors and no zero coefficients. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Number] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            coeff = as_rational(coeff)
            if coeff:
                clean[exp] = clean.get(exp, Fraction(0)) + coeff
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # constructors
    @classmethod
    def constant(cls, nvars: int, value: Number) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(index)
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def variables(cls, nvars: int) -> list["MultiPoly"]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    # arithmetic
    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def diff(self, index: int) -> "MultiPoly":
        out = {}
        for exp, c in self.terms.items():
            k = exp[index]
            if k:
                e = list(exp)
                e[index] = k - 1
                out[tuple(e)] = c * k
        return MultiPoly(self.nvars, out)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = term * x**k
            total = total + term
        return total

    __call__ = evaluate

    def permute_variables(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute ``x_i -> x_{perm[i]}`` (0-based)."""
        out = {}
        for exp, c in self.terms.items():
            e = [0] * self.nvars
            for i, k in enumerate(exp):
                e[perm[i]] += k
            out[tuple(e)] = c
        return MultiPoly(self.nvars, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(exp) if k
            )
            coeff = format_rational(c)
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        return " + ".join(parts)


def poly_laplacian(p: MultiPoly) -> MultiPoly:
    """Exact ``sum_i d^2 p / dx_i^2``."""
    if p.nvars < 1:
        raise ValueError("laplacian needs at least one variable")
    out = MultiPoly(p.nvars)
    for i in range(p.nvars):
        out = out + p.diff(i).diff(i)
    return out


# ---------------------------------------------------------------------------
# Jets and expression trees
# ---------------------------------------------------------------------------


class InvalidTestPoint(ZeroDivisionError):
    """Raised when an expression hits a pole at the requested point."""


@dataclass(frozen=True)
class Jet1:
    """Value together with all first partial derivatives, exact."""

    value: Fraction
    partials: tuple

    @classmethod
    def constant(cls, value, d: int) -> "Jet1":
        return cls(as_rational(value), (Fraction(0),) * d)

    @classmethod
    def seed(cls, value, index: int, d: int, slope=1) -> "Jet1":
        parts = [Fraction(0)] * d
        parts[index] = as_rational(slope)
        return cls(as_rational(value), tuple(parts))

    @property
    def dim(self) -> int:
        return len(self.partials)

    def _lift(self, other) -> "Jet1":
        if isinstance(other, Jet1):
            return other
        if isinstance(other, (int, Fraction)):
            return Jet1.constant(other, self.dim)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Jet1(self.value + other.value, tuple(a + b for a, b in zip(self.partials, other.partials)))

    __radd__ = __add__

    def __neg__(self):
        return Jet1(-self.value, tuple(-a for a in self.partials))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        u, v = self.value, other.value
        return Jet1(u * v, tuple(u * b + v * a for a, b in zip(self.partials, other.partials)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        v = other.value
        if v == 0:
            raise InvalidTestPoint("jet division by a zero value")
        u = self.value
        v2 = v * v
        return Jet1(u / v, tuple((a * v - u * b) / v2 for a, b in zip(self.partials, other.partials)))

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return Jet1.constant(1, self.dim) / (self ** (-k))
        out = Jet1.constant(1, self.dim)
        for _ in range(k):
            out = out * self
        return out


@dataclass(frozen=True)
class PythPoint:
    """Rational points ``(s_i, c_i)`` on the unit circle.

    ``s_i`` plays the role of ``sin(x_i/2)`` and ``c_i`` of ``cos(x_i/2)``.
    """

    t: tuple
    s: tuple
    c: tuple

    @property
    def dim(self) -> int:
        return len(self.s)


def pyth_point(t: Iterable) -> PythPoint:
    ts = tuple(as_rational(v) for v in t)
    s = tuple(2 * v / (1 + v * v) for v in ts)
    c = tuple((1 - v * v) / (1 + v * v) for v in ts)
    return PythPoint(ts, s, c)


class Expr:
    """Node of a rational expression tree; build with Python operators."""

    def __add__(self, other):
        return Add(self, lift(other))

    def __radd__(self, other):
        return Add(lift(other), self)

    def __sub__(self, other):
        return Sub(self, lift(other))

    def __rsub__(self, other):
        return Sub(lift(other), self)

    def __mul__(self, other):
        return Mul(self, lift(other))

    def __rmul__(self, other):
        return Mul(lift(other), self)

    def __truediv__(self, other):
        return Div(self, lift(other))

    def __rtruediv__(self, other):
        return Div(lift(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, k: int):
        return Pow(self, k)


def lift(value) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(as_rational(value))


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True, eq=False)
class Var(Expr):
    index: int


@dataclass(frozen=True, eq=False)
class HalfSin(Expr):
    """``sin(x_i / 2)``; needs a :class:`PythPoint` to evaluate."""

    index: int


@dataclass(frozen=True, eq=False)
class HalfCos(Expr):
    """``cos(x_i / 2)``; needs a :class:`PythPoint` to evaluate."""

    index: int


@dataclass(frozen=True, eq=False)
class Add(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Sub(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Div(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    a: Expr


@dataclass(frozen=True, eq=False)
class Pow(Expr):
    a: Expr
    k: int


def expr_sum(items: Iterable[Expr]) -> Expr:
    total: Expr = Const(Fraction(0))
    first = True
    for item in items:
        total = lift(item) if first else total + item
        first = False
    return total


def jet_eval(expr: Expr, point) -> Jet1:
    """Exact value and first partials of ``expr`` at ``point``.

    ``point`` is a sequence of rationals for :class:`Var` leaves or a
    :class:`PythPoint` for :class:`HalfSin` / :class:`HalfCos` leaves, where
    ``d/dx_i sin(x_i/2) = cos(x_i/2)/2`` and ``d/dx_i cos(x_i/2) = -sin(x_i/2)/2``.
    Raises :class:`InvalidTestPoint` on division by zero.
    """
    if isinstance(point, PythPoint):
        d = point.dim
        coords = None
    else:
        coords = tuple(as_rational(v) for v in point)
        d = len(coords)
    cache: dict = {}

    def ev(node: Expr) -> Jet1:
        key = id(node)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Const):
            out = Jet1.constant(node.value, d)
        elif isinstance(node, Var):
            if coords is None:
                raise TypeError("Var leaf needs a rational coordinate point")
            out = Jet1.seed(coords[node.index], node.index, d)
        elif isinstance(node, HalfSin):
            if coords is not None:
                raise TypeError("HalfSin leaf needs a PythPoint")
            i = node.index
            out = Jet1.seed(point.s[i], i, d, point.c[i] / 2)
        elif isinstance(node, HalfCos):
            if coords is not None:
                raise TypeError("HalfCos leaf needs a PythPoint")
            i = node.index
            out = Jet1.seed(point.c[i], i, d, -point.s[i] / 2)
        elif isinstance(node, Add):
            out = ev(node.a) + ev(node.b)
        elif isinstance(node, Sub):
            out = ev(node.a) - ev(node.b)
        elif isinstance(node, Mul):
            out = ev(node.a) * ev(node.b)
        elif isinstance(node, Div):
            out = ev(node.a) / ev(node.b)
        elif isinstance(node, Neg):
            out = -ev(node.a)
        elif isinstance(node, Pow):
            out = ev(node.a) ** node.k
        else:
            raise TypeError(f"unknown node {type(node).__name__}")
        cache[key] = out
        return out

    return ev(expr)


def exact_eval(expr: Expr, point) -> Fraction:
    """Value only; cheaper than :func:`jet_eval` when partials are not needed."""
    if isinstance(point, PythPoint):
        coords = None
    else:
        coords = tuple(as_rational(v) for v in point)
    cache: dict = {}

    def ev(node: Expr) -> Fraction:
        key = id(node)
        if key in cache:
            return cache[key]
        if isinstance(node, Const):
            out = node.value
        elif isinstance(node, Var):
            out = coords[node.index]
        elif isinstance(node, HalfSin):
            out = point.s[node.index]
        elif isinstance(node, HalfCos):
            out = point.c[node.index]
        elif isinstance(node, Add):
            out = ev(node.a) + ev(node.b)
        elif isinstance(node, Sub):
            out = ev(node.a) - ev(node.b)
        elif isinstance(node, Mul):
            out = ev(node.a) * ev(node.b)
        elif isinstance(node, Div):
            den = ev(node.b)
            if den == 0:
                raise InvalidTestPoint("division by zero")
            out = ev(node.a) / den
        elif isinstance(node, Neg):
            out = -ev(node.a)
        elif isinstance(node, Pow):
            base = ev(node.a)
            if node.k < 0 and base == 0:
                raise InvalidTestPoint("negative power of zero")
            out = base**node.k
        else:
            raise TypeError(f"unknown node {type(node).__name__}")
        cache[key] = out
        return out

    return ev(expr)
