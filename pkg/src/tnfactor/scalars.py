"""Exact scalars.

Rationals are plain :class:`fractions.Fraction` values (always stored in
lowest terms, denominator positive).  :class:`RadicalScalar` carries values
of the form ``q * sqrt(d)`` with rational ``q`` and ``d``; only the
perfect-square rule is applied when simplifying.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "ExactScalar",
    "RadicalScalar",
    "as_exact",
    "exact_add",
    "exact_mul",
    "exact_div",
    "radical_mul",
    "to_float",
    "checked_float",
    "rational_root",
    "format_exact",
    "parse_exact",
    "format_scalar",
    "parse_scalar",
]

ExactScalar = Fraction


def as_exact(value) -> Fraction:
    """Coerce ints, Fractions and rational literals (``"3/4"``) to Fraction.

    Floats are refused: once a value is rounded to binary64 there is no way
    back to the exact rational the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_exact(value)
    if isinstance(value, RadicalScalar) and value.is_rational:
        return value.coefficient
    raise TypeError(f"cannot use {value!r} ({type(value).__name__}) as an exact scalar")


def exact_add(a, b) -> Fraction:
    return as_exact(a) + as_exact(b)


def exact_mul(a, b) -> Fraction:
    return as_exact(a) * as_exact(b)


def exact_div(a, b) -> Fraction:
    b = as_exact(b)
    if b == 0:
        raise ZeroDivisionError("exact division by zero")
    return as_exact(a) / b


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """Return the exact ``k``-th root of a nonnegative rational, or None."""
    if k <= 0:
        raise ValueError("root index must be positive")
    q = as_exact(q)
    if q < 0:
        return None
    if k == 1 or q == 0:
        return q

    def iroot(n: int) -> int | None:
        r = _int_root_newton(n, k)
        return r if r**k == n else None

    num = iroot(q.numerator)
    if num is None:
        return None
    den = iroot(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def _int_root_newton(n: int, k: int) -> int:
    # floor of the k-th root of a nonnegative integer
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True, eq=False)
class RadicalScalar:
    """The real number ``coefficient * sqrt(radicand)``.

    A radicand that is the square of a rational is folded into the
    coefficient at construction, leaving radicand 1.  No other
    simplification is attempted.
    """

    coefficient: Fraction
    radicand: Fraction = Fraction(1)

    def __post_init__(self):
        c = as_exact(self.coefficient)
        d = as_exact(self.radicand)
        if d < 0:
            raise ValueError(f"negative radicand {d}")
        root = rational_root(d, 2)
        if root is not None:
            c, d = c * root, Fraction(1)
        if c == 0:
            d = Fraction(1)
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "radicand", d)

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def square(self) -> Fraction:
        return self.coefficient * self.coefficient * self.radicand

    def sign(self) -> int:
        return (self.coefficient > 0) - (self.coefficient < 0)

    def __eq__(self, other):
        if isinstance(other, RadicalScalar):
            return self.sign() == other.sign() and self.square() == other.square()
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coefficient == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.coefficient)
        return hash((self.sign(), self.square(), "radical"))

    def __neg__(self):
        return RadicalScalar(-self.coefficient, self.radicand)

    def __mul__(self, other):
        if isinstance(other, RadicalScalar):
            return radical_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return RadicalScalar(self.coefficient * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RadicalScalar(Fraction(other))
        if not isinstance(other, RadicalScalar):
            return NotImplemented
        if other.coefficient == 0:
            return self
        if self.coefficient == 0:
            return other
        if self.radicand != other.radicand:
            raise ArithmeticError(
                f"cannot add {format_scalar(self)} and {format_scalar(other)} exactly"
            )
        return RadicalScalar(self.coefficient + other.coefficient, self.radicand)

    __radd__ = __add__

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        return f"RadicalScalar({format_scalar(self)!r})"


def radical_mul(a: RadicalScalar, b: RadicalScalar) -> Union[Fraction, RadicalScalar]:
    """Multiply two radicals.

    Equal radicands give the rational ``c_a * c_b * d``; otherwise the
    radicands multiply, and the result collapses to a rational whenever the
    product radicand is a perfect square.
    """
    if a.radicand == b.radicand:
        return a.coefficient * b.coefficient * a.radicand
    out = RadicalScalar(a.coefficient * b.coefficient, a.radicand * b.radicand)
    return out.coefficient if out.is_rational else out


def _fraction_to_float(q: Fraction) -> float:
    try:
        value = q.numerator / q.denominator  # correctly rounded for ints
    except OverflowError as exc:
        raise OverflowError(f"{format_exact(q)} is outside the binary64 range") from exc
    if math.isinf(value):
        raise OverflowError(f"{format_exact(q)} is outside the binary64 range")
    return value


def to_float(a) -> float:
    """Nearest binary64 value of an exact or radical scalar."""
    if isinstance(a, RadicalScalar):
        c = _fraction_to_float(a.coefficient)
        if a.is_rational:
            return c
        return c * math.sqrt(_fraction_to_float(a.radicand))
    if isinstance(a, float):
        return checked_float(a)
    return _fraction_to_float(as_exact(a))


def checked_float(value) -> float:
    """Reject NaN and infinities; the float kind only holds finite values."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite float {value!r}")
    return value


def format_exact(q) -> str:
    q = as_exact(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_exact(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    if any(ch in s for ch in ".eE") or s.lower() in {"inf", "-inf", "nan"}:
        raise ValueError(f"{text!r} is not a rational literal (use p/q)")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_scalar(a) -> str:
    """Serialize a scalar: ``"p/q"`` or ``"p/q*sqrt(r/s)"``; floats via repr."""
    if isinstance(a, RadicalScalar):
        if a.is_rational:
            return format_exact(a.coefficient)
        return f"{format_exact(a.coefficient)}*sqrt({format_exact(a.radicand)})"
    if isinstance(a, float):
        return repr(checked_float(a))
    return format_exact(a)


def parse_scalar(text, kind: str):
    if kind == "float":
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            return checked_float(text)
        return checked_float(float(text))
    if kind == "exact":
        return parse_exact(str(text))
    if kind == "radical":
        s = str(text).strip()
        if "*sqrt(" in s:
            coef, rest = s.split("*sqrt(", 1)
            if not rest.endswith(")"):
                raise ValueError(f"bad radical literal {text!r}")
            return RadicalScalar(parse_exact(coef), parse_exact(rest[:-1]))
        return RadicalScalar(parse_exact(s))
    raise ValueError(f"unknown scalar kind {kind!r}")
