"""Exact rational and Gaussian-rational arithmetic.

Rationals are carried by :class:`fractions.Fraction`, which already keeps
values reduced with a positive denominator.  :class:`CRational` adds the
complex layer on top of it.  Both render to and parse from a compact text
form::

    3/2        -7        1/2+3/4i        -1i        5/3i
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DivisionByZero, FloatOverflow

Rational = Fraction

Exact = Union[int, Fraction, "CRational"]

__all__ = [
    "Rational",
    "CRational",
    "I",
    "ONE",
    "ZERO",
    "as_fraction",
    "as_crational",
    "rat_add",
    "rat_sub",
    "rat_mul",
    "rat_div",
    "rat_neg",
    "rat_compare",
    "c_add",
    "c_sub",
    "c_mul",
    "c_div",
    "c_conj",
    "c_abs_squared",
    "c_inv",
    "to_float",
    "format_rational",
    "parse_rational",
    "format_value",
    "parse_value",
]


def as_fraction(x: object) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an exact number")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, CRational):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class CRational:
    """A Gaussian rational ``re + im*i`` with exact components."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("CRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> CRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- predicates -------------------------------------------------------

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Exact) -> CRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return CRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Exact) -> CRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return CRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Exact) -> CRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> CRational:
        return CRational._raw(-self.re, -self.im)

    def __pos__(self) -> CRational:
        return self

    def __mul__(self, other: Exact) -> CRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return CRational._raw(a * c, b)
        return CRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other: Exact) -> CRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other: Exact) -> CRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int) -> CRational:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** -n
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> CRational:
        return CRational._raw(self.re, -self.im)

    def abs_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inv(self) -> CRational:
        if not self.im:
            if not self.re:
                raise DivisionByZero("inv")
            return CRational._raw(1 / self.re, self.im)
        n = self.abs_squared()
        return CRational._raw(self.re / n, -self.im / n)

    # -- conversions ------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(_to_float(self.re), _to_float(self.im))

    def __repr__(self) -> str:
        return f"CRational({format_value(self)!r})"

    def __str__(self) -> str:
        return format_value(self)

    def __reduce__(self):
        return (CRational, (self.re, self.im))


def _coerce(x: object) -> CRational | None:
    if isinstance(x, CRational):
        return x
    if isinstance(x, Fraction):
        return CRational._raw(x, _F0)
    if isinstance(x, int) and not isinstance(x, bool):
        return CRational._raw(Fraction(x), _F0)
    return None


def as_crational(x: object) -> CRational:
    if isinstance(x, str):
        return parse_value(x)
    c = _coerce(x)
    if c is None:
        raise TypeError(f"cannot use {type(x).__name__} as an exact value")
    return c


_F0 = Fraction(0)
ZERO = CRational._raw(_F0, _F0)
ONE = CRational._raw(Fraction(1), _F0)
I = CRational._raw(_F0, Fraction(1))


# -- the rat_ops family ----------------------------------------------------

def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    if not b:
        raise DivisionByZero("rat_div")
    return Fraction(a) / b


def rat_neg(a: Fraction) -> Fraction:
    return -a


def rat_compare(a: Fraction, b: Fraction) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return (a > b) - (a < b)


# -- the c_ops family ------------------------------------------------------

def c_add(a: CRational, b: CRational) -> CRational:
    return a + b


def c_sub(a: CRational, b: CRational) -> CRational:
    return a - b


def c_mul(a: CRational, b: CRational) -> CRational:
    return a * b


def c_div(a: CRational, b: CRational) -> CRational:
    if not b:
        raise DivisionByZero("c_div")
    return a / b


def c_conj(a: CRational) -> CRational:
    return a.conj()


def c_abs_squared(a: CRational) -> Fraction:
    return a.abs_squared()


def c_inv(a: CRational) -> CRational:
    if not a:
        raise DivisionByZero("c_inv")
    return a.inv()


# -- float layer -----------------------------------------------------------

def _to_float(q: Fraction) -> float:
    try:
        return float(q)
    except OverflowError as exc:
        raise FloatOverflow(f"{format_rational(q)} exceeds the binary64 range") from exc


def to_float(a: int | Fraction | CRational) -> float | complex:
    """Round to the nearest binary64 (complex for :class:`CRational`).

    Rounding is correct, so the relative error is at most 2**-53.
    """
    if isinstance(a, CRational):
        return complex(a)
    return _to_float(as_fraction(a))


# -- text form -------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"\s*([+-]?)\s*({_RAT})\s*\Z")
_VALUE_RE = re.compile(
    rf"""\s*
    (?:
        (?P<re_sign>[+-]?)(?P<re>{_RAT})
        (?:(?P<im_sign>[+-])(?P<im>{_RAT})?i)?
      |
        (?P<pim_sign>[+-]?)(?P<pim>{_RAT})?i
    )
    \s*\Z""",
    re.VERBOSE,
)


def _frac(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise DivisionByZero("parse")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    value = _frac(m.group(2))
    return -value if m.group(1) == "-" else value


def format_value(a: int | Fraction | CRational) -> str:
    """Render as ``n/d`` or ``a/b+c/di``; the output round-trips through
    :func:`parse_value`."""
    if not isinstance(a, CRational):
        return format_rational(as_fraction(a))
    if not a.im:
        return format_rational(a.re)
    im = format_rational(a.im) + "i"
    if not a.re:
        return im
    sign = "" if a.im < 0 else "+"
    return f"{format_rational(a.re)}{sign}{im}"


def parse_value(text: str) -> CRational:
    m = _VALUE_RE.match(text)
    if not m:
        raise ValueError(f"not a numeric literal: {text!r}")
    if m.group("re") is not None:
        re_part = _frac(m.group("re"))
        if m.group("re_sign") == "-":
            re_part = -re_part
        im_part = _F0
        if m.group("im_sign"):
            im_part = _frac(m.group("im")) if m.group("im") else Fraction(1)
            if m.group("im_sign") == "-":
                im_part = -im_part
        return CRational._raw(re_part, im_part)
    im_part = _frac(m.group("pim")) if m.group("pim") else Fraction(1)
    if m.group("pim_sign") == "-":
        im_part = -im_part
    return CRational._raw(_F0, im_part)
