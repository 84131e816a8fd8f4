"""Scalar arithmetic in three numeric modes.

Every computation in this package runs over one of three kinds of scalar:

* rational: exact arithmetic on ``fractions.Fraction``;
* quadratic: exact arithmetic on ``a + b*sqrt(d)`` with rational ``a``, ``b``
  and one fixed squarefree integer ``d > 1``;
* approx: ordinary floats, with the zero test ``|x| <= eps`` for a tolerance
  that is fixed once per computation, never per operation.

A mode object (:class:`RationalMode`, :class:`QuadraticMode`,
:class:`ApproxMode`) owns construction, the zero and sign tests, and the
literal syntax.  Scalars of different modes never mix implicitly: combining
quadratic values over different radicands, or exact values with floats,
raises :class:`ScalarModeError`.  Plain ``int`` and ``Fraction`` operands
embed exactly into the exact modes and are accepted everywhere.

Literal grammar (shared by character files, certificates and the CLI)::

    rational    p  or  p/q
    quadratic   a+b*sqrt(d)     with a, b rational; the rational part,
                the coefficient, or both may be omitted: sqrt(5),
                -sqrt(5), 1/2*sqrt(5), 2-sqrt(5), 3/2+1/2*sqrt(5)
    approx      any of the above, or a decimal float such as 1.5 or 2e-3

Decimal floats are only accepted in approx mode.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Union

DEFAULT_EPS = 1e-9


class ScalarModeError(TypeError):
    """Values from incompatible numeric modes were combined."""


class ScalarParseError(ValueError):
    """A scalar literal is malformed."""


@lru_cache(maxsize=None)
def _check_radicand(d: int) -> None:
    if not isinstance(d, int) or d <= 1:
        raise ValueError(f"radicand must be an integer > 1, got {d!r}")
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            raise ValueError(f"radicand {d} is not squarefree")
        p += 1


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n > 0 as d * f**2 with d squarefree; returns (d, f)."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    d, f = n, 1
    p = 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            f *= p
        p += 1
    return d, f


def _exact_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise ScalarModeError("floats cannot appear in exact scalars")
    return Fraction(x)


class QuadraticElement:
    """An element ``a + b*sqrt(d)`` of a real quadratic field.

    ``a`` and ``b`` are Fractions and ``d`` is squarefree, so the
    representation is unique and equality, signs and zero tests are exact.
    Arithmetic accepts ``int`` and ``Fraction`` operands; elements over a
    different radicand, or floats, raise :class:`ScalarModeError`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        _check_radicand(d)
        self.a = _exact_fraction(a)
        self.b = _exact_fraction(b)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadraticElement):
            if other.d != self.d:
                raise ScalarModeError(
                    f"cannot combine sqrt({self.d}) and sqrt({other.d}) values")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(other, 0, self.d)
        if isinstance(other, float):
            raise ScalarModeError("cannot combine exact quadratic values with floats")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.d)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        out = QuadraticElement(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def reciprocal(self) -> "QuadraticElement":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero quadratic element")
        return QuadraticElement(self.a / nrm, -self.b / nrm, self.d)

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """The rational number (a + b*sqrt(d)) * (a - b*sqrt(d))."""
        return self.a * self.a - self.d * self.b * self.b

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # opposite signs: the component with larger square magnitude wins
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadraticElement):
            if self.d == other.d:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, float):
            return False
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise ScalarModeError(f"cannot order quadratic value against {other!r}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self):
        return _format_quadratic(self.a, self.b, self.d)

    def __repr__(self):
        return f"QuadraticElement({self.a}, {self.b}, d={self.d})"


Scalar = Union[Fraction, QuadraticElement, float]


def _format_quadratic(a: Fraction, b: Fraction, d: int) -> str:
    if b == 0:
        return str(a)
    sign = "+" if b > 0 else "-"
    return f"{a}{sign}{abs(b)}*sqrt({d})"


_SQRT_LITERAL = re.compile(
    r"(?P<head>[+-]?\d+(?:/\d+)?)?"
    r"(?P<sign>[+-])?"
    r"(?:(?P<coef>\d+(?:/\d+)?)\*)?"
    r"sqrt\((?P<d>\d+)\)")


def parse_scalar_literal(text: str):
    """Parse one scalar literal.

    Returns a Fraction, a float, or a triple ``(a, b, d)`` of two Fractions
    and the radicand for quadratic literals.  Raises
    :class:`ScalarParseError` on malformed input.
    """
    s = text.strip()
    if not s:
        raise ScalarParseError("empty scalar literal")
    if "sqrt" in s:
        m = _SQRT_LITERAL.fullmatch(s)
        if m is None:
            raise ScalarParseError(f"malformed quadratic literal: {text!r}")
        head, sign, coef, d_text = m.group("head", "sign", "coef", "d")
        if head is not None and sign is None:
            raise ScalarParseError(
                f"missing sign between rational part and sqrt term: {text!r}")
        try:
            a = Fraction(head) if head is not None else Fraction(0)
            b = Fraction(coef) if coef is not None else Fraction(1)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarParseError(f"bad rational component in {text!r}: {exc}") from None
        if sign == "-":
            b = -b
        d = int(d_text)
        try:
            _check_radicand(d)
        except ValueError as exc:
            raise ScalarParseError(str(exc)) from None
        return (a, b, d)
    if any(c in s for c in ".eE"):
        try:
            return float(s)
        except ValueError:
            raise ScalarParseError(f"malformed float literal: {text!r}") from None
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ScalarParseError(f"malformed rational literal: {text!r}") from None


@dataclass(frozen=True)
class RationalMode:
    """Exact arithmetic on Fraction values."""

    kind: ClassVar[str] = "rational"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, QuadraticElement) and x.is_rational:
            return x.a
        raise ScalarModeError(f"not a rational-mode value: {x!r}")

    def is_zero(self, x) -> bool:
        return self.coerce(x) == 0

    def sign(self, x) -> int:
        v = self.coerce(x)
        return (v > 0) - (v < 0)

    def eq(self, x, y) -> bool:
        return self.coerce(x) == self.coerce(y)

    def format(self, x) -> str:
        return str(self.coerce(x))

    def parse(self, text: str) -> Fraction:
        raw = parse_scalar_literal(text)
        if isinstance(raw, Fraction):
            return raw
        if isinstance(raw, float):
            raise ScalarModeError(
                f"decimal floats are only accepted in approx mode: {text!r}")
        raise ScalarModeError(
            f"sqrt literals need quadratic or approx mode: {text!r}")

    def to_float(self, x) -> float:
        return float(self.coerce(x))


@dataclass(frozen=True)
class QuadraticMode:
    """Exact arithmetic on a + b*sqrt(d) for one squarefree d > 1."""

    d: int

    kind: ClassVar[str] = "quadratic"

    def __post_init__(self):
        _check_radicand(self.d)

    def zero(self) -> QuadraticElement:
        return QuadraticElement(0, 0, self.d)

    def one(self) -> QuadraticElement:
        return QuadraticElement(1, 0, self.d)

    def from_int(self, n: int) -> QuadraticElement:
        return QuadraticElement(n, 0, self.d)

    def sqrt_d(self) -> QuadraticElement:
        return QuadraticElement(0, 1, self.d)

    def coerce(self, x) -> QuadraticElement:
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return QuadraticElement(x, 0, self.d)
        if isinstance(x, QuadraticElement):
            if x.d == self.d:
                return x
            if x.is_rational:
                return QuadraticElement(x.a, 0, self.d)
            raise ScalarModeError(
                f"sqrt({x.d}) value does not live in Q(sqrt({self.d}))")
        raise ScalarModeError(f"not a quadratic-mode value: {x!r}")

    def is_zero(self, x) -> bool:
        v = self.coerce(x)
        return v.a == 0 and v.b == 0

    def sign(self, x) -> int:
        return self.coerce(x).sign()

    def eq(self, x, y) -> bool:
        return self.coerce(x) == self.coerce(y)

    def format(self, x) -> str:
        v = self.coerce(x)
        return _format_quadratic(v.a, v.b, v.d)

    def parse(self, text: str) -> QuadraticElement:
        raw = parse_scalar_literal(text)
        if isinstance(raw, Fraction):
            return QuadraticElement(raw, 0, self.d)
        if isinstance(raw, float):
            raise ScalarModeError(
                f"decimal floats are only accepted in approx mode: {text!r}")
        a, b, d = raw
        if d != self.d and b != 0:
            raise ScalarModeError(
                f"literal uses sqrt({d}) but the computation runs over sqrt({self.d})")
        return QuadraticElement(a, b, self.d)

    def to_float(self, x) -> float:
        return float(self.coerce(x))


@dataclass(frozen=True)
class ApproxMode:
    """Float arithmetic with zero test |x| <= eps, one eps per computation."""

    eps: float = DEFAULT_EPS

    kind: ClassVar[str] = "approx"

    def __post_init__(self):
        if not (isinstance(self.eps, float) and math.isfinite(self.eps) and self.eps > 0):
            raise ValueError(f"tolerance must be a positive finite float, got {self.eps!r}")

    def zero(self) -> float:
        return 0.0

    def one(self) -> float:
        return 1.0

    def from_int(self, n: int) -> float:
        return float(n)

    def coerce(self, x) -> float:
        if isinstance(x, (int, float, Fraction)) and not isinstance(x, bool):
            return float(x)
        if isinstance(x, QuadraticElement):
            return float(x)
        raise ScalarModeError(f"not an approx-mode value: {x!r}")

    def is_zero(self, x) -> bool:
        return abs(self.coerce(x)) <= self.eps

    def sign(self, x) -> int:
        v = self.coerce(x)
        if abs(v) <= self.eps:
            return 0
        return 1 if v > 0 else -1

    def eq(self, x, y) -> bool:
        return abs(self.coerce(x) - self.coerce(y)) <= self.eps

    def format(self, x) -> str:
        return repr(self.coerce(x))

    def parse(self, text: str) -> float:
        raw = parse_scalar_literal(text)
        if isinstance(raw, (Fraction, float)):
            return float(raw)
        a, b, d = raw
        return float(a) + float(b) * math.sqrt(d)

    def to_float(self, x) -> float:
        return self.coerce(x)


Mode = Union[RationalMode, QuadraticMode, ApproxMode]


def natural_mode(x, eps: float = DEFAULT_EPS) -> Mode:
    """The mode a raw scalar most naturally lives in."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RationalMode()
    if isinstance(x, QuadraticElement):
        return QuadraticMode(x.d)
    if isinstance(x, float):
        return ApproxMode(eps)
    raise ScalarModeError(f"not a scalar: {x!r}")


def mode_to_json(mode: Mode) -> dict:
    if isinstance(mode, RationalMode):
        return {"kind": "rational"}
    if isinstance(mode, QuadraticMode):
        return {"kind": "quadratic", "d": mode.d}
    if isinstance(mode, ApproxMode):
        return {"kind": "approx", "eps": mode.eps}
    raise TypeError(f"not a mode: {mode!r}")


def mode_from_json(obj) -> Mode:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ScalarParseError(f"malformed mode description: {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "rational":
            return RationalMode()
        if kind == "quadratic":
            return QuadraticMode(int(obj["d"]))
        if kind == "approx":
            return ApproxMode(float(obj["eps"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScalarParseError(f"malformed mode description: {obj!r} ({exc})") from None
    raise ScalarParseError(f"unknown mode kind: {kind!r}")
