"""Scaled number structures and the maps between them.

A structure ``S_p`` lives on the same base set as the scale-1 structure
``S`` but assigns every element a value scaled by ``p``: the element that
carries the value ``a`` inside ``S_p`` carries ``p*a`` in ``S``.  To stay a
model of the same axioms, the operations compensate::

    +_p = +      -_p = -      *_p = * / p      /_p = p /      1_p <-> p

Three interchangeable views evaluate expressions over one structure:

* :class:`BaseView`: plain arithmetic in ``S``;
* :class:`ExternalView`: ``S_p`` written with the operations of ``S``
  (values ``p*a``, multiplication ``x*y/p`` ...);
* :class:`InternalView`: ``S_p`` seen from inside, on :class:`ScaledValue`.

All three expose the same small interface (``embed``, ``add``, ``sub``,
``mul``, ``div``, ``conj``, ``lt``, ``eq``, ``zero``, ``one``) so terms and
axioms are written once and run in every view.
"""

from __future__ import annotations

import cmath
import enum
import re
from dataclasses import dataclass

from .errors import (
    DivisionByZero,
    DomainError,
    InvalidScale,
    NotInBaseSet,
    StructureMismatch,
    TypeMismatch,
    UnsupportedOperation,
)
from .exact import ONE, ZERO, CRational, as_crational, format_value, parse_value


class NumberType(enum.Enum):
    NATURAL = ("nat", "n")
    INTEGER = ("int", "j")
    RATIONAL = ("rat", "r")
    REAL = ("real", "r")
    COMPLEX = ("cpx", "c")

    @property
    def prefix(self) -> str:
        return self.value[0]

    @property
    def scale_key(self) -> str:
        return self.value[1]

    @property
    def is_field(self) -> bool:
        return self in _FIELDS

    @property
    def is_ordered(self) -> bool:
        return self is not NumberType.COMPLEX

    @classmethod
    def from_prefix(cls, prefix: str) -> NumberType:
        for t in cls:
            if t.prefix == prefix:
                return t
        raise InvalidScale(f"unknown number type {prefix!r}")


_FIELDS = frozenset({NumberType.RATIONAL, NumberType.REAL, NumberType.COMPLEX})


def _is_integer(v: CRational) -> bool:
    return not v.im and v.re.denominator == 1


def in_value_domain(v: CRational, t: NumberType) -> bool:
    """True when ``v`` is a legal value of a number of type ``t``."""
    if t is NumberType.NATURAL:
        return _is_integer(v) and v.re >= 0
    if t is NumberType.INTEGER:
        return _is_integer(v)
    if t in (NumberType.RATIONAL, NumberType.REAL):
        return v.is_real
    return True


def _require_domain(v: CRational, t: NumberType, what: str = "value") -> None:
    if not in_value_domain(v, t):
        raise DomainError(f"{what} {format_value(v)} is not a {t.name.lower()} value")


def _validate_scale(t: NumberType, p: CRational) -> None:
    if not p:
        raise InvalidScale("scale factor must be nonzero")
    if t is NumberType.NATURAL and not (_is_integer(p) and p.re > 0):
        raise InvalidScale(f"natural structures need a positive integer scale, got {p}")
    if t is NumberType.INTEGER and not _is_integer(p):
        raise InvalidScale(f"integer structures need a nonzero integer scale, got {p}")
    if t in (NumberType.RATIONAL, NumberType.REAL) and not p.is_real:
        raise InvalidScale(f"{t.name.lower()} structures need a real scale, got {p}")


# --------------------------------------------------------------------------
# handles and values
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureHandle:
    """One scaled structure: a number type and its nonzero scale factor."""

    number_type: NumberType
    scale: CRational

    @property
    def is_base(self) -> bool:
        return self.scale == 1

    @property
    def literal(self) -> str:
        t = self.number_type
        return f"{t.prefix}:{t.scale_key}={format_value(self.scale)}"

    def __str__(self) -> str:
        return self.literal


def make_structure(t: NumberType, p: object) -> StructureHandle:
    scale = as_crational(p)
    _validate_scale(t, scale)
    return StructureHandle(t, scale)


_LITERAL_RE = re.compile(r"\s*([a-z]+)\s*:\s*([a-z])\s*=\s*(\S+)\s*\Z")


def parse_structure(text: str) -> StructureHandle:
    """Parse ``nat:n=3``, ``int:j=-1``, ``rat:r=3/2``, ``real:r=-2/5``, ``cpx:c=2+1i``."""
    m = _LITERAL_RE.match(text)
    if not m:
        raise InvalidScale(f"malformed structure literal {text!r}")
    t = NumberType.from_prefix(m.group(1))
    if m.group(2) != t.scale_key:
        raise InvalidScale(f"{t.prefix} structures take '{t.scale_key}=', got '{m.group(2)}='")
    try:
        scale = parse_value(m.group(3))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidScale(str(exc)) from exc
    return make_structure(t, scale)


def base_structure(t: NumberType) -> StructureHandle:
    return StructureHandle(t, ONE)


@dataclass(frozen=True)
class BaseElement:
    """An element of the base set, named by its value in the scale-1 structure."""

    base_value: CRational

    def __post_init__(self) -> None:
        object.__setattr__(self, "base_value", as_crational(self.base_value))


@dataclass(frozen=True)
class ScaledValue:
    """A value ``a_p`` as seen inside its owning structure ``S_p``."""

    internal: CRational
    owner: StructureHandle

    @property
    def correspondent(self) -> CRational:
        return self.owner.scale * self.internal

    def __str__(self) -> str:
        return f"{format_value(self.internal)}@{self.owner.literal}"


def correspondent(v: ScaledValue) -> BaseElement:
    return BaseElement(v.correspondent)


def same_value(a: object, target: StructureHandle) -> ScaledValue:
    """The value in ``target`` that plays the role ``a`` plays in the base
    structure.  Its element is ``p*a``, not ``a``, unless ``p == 1``."""
    v = as_crational(a)
    _require_domain(v, target.number_type)
    return ScaledValue(v, target)


def member_of_base_set(e: BaseElement | object, s: StructureHandle) -> bool:
    v = e.base_value if isinstance(e, BaseElement) else as_crational(e)
    t = s.number_type
    if t in (NumberType.NATURAL, NumberType.INTEGER):
        if not _is_integer(v):
            return False
        q = v.re / s.scale.re
        if q.denominator != 1:
            return False
        return t is NumberType.INTEGER or q >= 0
    return in_value_domain(v, t)


def view_value(e: BaseElement | object, s: StructureHandle) -> ScaledValue:
    """Internal value, inside ``s``, of the base-set element ``e``."""
    v = e.base_value if isinstance(e, BaseElement) else as_crational(e)
    if not member_of_base_set(v, s):
        raise NotInBaseSet(f"element {format_value(v)} is not in the base set of {s}")
    return ScaledValue(v / s.scale, s)


# --------------------------------------------------------------------------
# scaled operations on ScaledValue
# --------------------------------------------------------------------------


def _owner(a: ScaledValue, b: ScaledValue) -> StructureHandle:
    if a.owner != b.owner:
        raise StructureMismatch(f"operands live in {a.owner} and {b.owner}")
    return a.owner


def add_scaled(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    return ScaledValue(a.internal + b.internal, _owner(a, b))


def sub_scaled(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    s = _owner(a, b)
    d = a.internal - b.internal
    if s.number_type is NumberType.NATURAL and d.re < 0:
        raise DomainError(f"natural subtraction {a.internal} - {b.internal} is negative")
    return ScaledValue(d, s)


def mul_scaled(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    return ScaledValue(a.internal * b.internal, _owner(a, b))


def div_scaled(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    s = _owner(a, b)
    if not s.number_type.is_field:
        raise UnsupportedOperation(f"division is not an operation of {s}")
    if not b.internal:
        raise DivisionByZero("div_scaled")
    return ScaledValue(a.internal / b.internal, s)


def lt_scaled(a: ScaledValue, b: ScaledValue) -> bool:
    """``a <_p b``.  Inside the structure the order is the base order on
    internal values, whatever the sign of ``p``."""
    s = _owner(a, b)
    if s.number_type is NumberType.COMPLEX and not (a.internal.is_real and b.internal.is_real):
        raise UnsupportedOperation("complex structures are ordered only on their real substructure")
    return a.internal.re < b.internal.re


def conj_scaled(a: ScaledValue) -> ScaledValue:
    """``(a_c)^{*_c}``; its correspondent is ``c * conj(a)``, not ``conj(c) * conj(a)``."""
    if a.owner.number_type is not NumberType.COMPLEX:
        raise UnsupportedOperation(f"conjugation is not an operation of {a.owner}")
    return ScaledValue(a.internal.conj(), a.owner)


def conj_phase_form(a: ScaledValue) -> complex:
    """Float evaluation of ``exp(2i*phi) * conj(c) * conj(a)`` with ``c = |c| exp(i*phi)``."""
    if a.owner.number_type is not NumberType.COMPLEX:
        raise UnsupportedOperation(f"conjugation is not an operation of {a.owner}")
    c = complex(a.owner.scale)
    phi = cmath.phase(c)
    return cmath.exp(2j * phi) * c.conjugate() * complex(a.internal).conjugate()


# --------------------------------------------------------------------------
# maps between representations
# --------------------------------------------------------------------------


def map_up(a: object, p: object) -> CRational:
    """``W^p``: base value ``a`` to its external value ``p*a``."""
    scale = as_crational(p)
    if not scale:
        raise InvalidScale("scale factor must be nonzero")
    return scale * as_crational(a)


def map_down(x: object, s: StructureHandle) -> ScaledValue:
    """``W_p``: external value ``p*a`` to the internal value ``a_p``."""
    return view_value(x, s)


def map_down_inverse(v: ScaledValue) -> CRational:
    """``(W_p)^-1``: internal value back to its external (base) value."""
    return v.correspondent


def fp_map(a: object, s: StructureHandle) -> ScaledValue:
    """``F_p = W_p . W^p``; agrees with :func:`same_value`."""
    return map_down(map_up(a, s.scale), s)


def compose_scaling(s: StructureHandle, q: object) -> StructureHandle:
    """Scale ``s`` again by ``q``, a value of ``s``; one step with ``q*p``."""
    qv = as_crational(q)
    _validate_scale(s.number_type, qv)
    return make_structure(s.number_type, qv * s.scale)


def group_op(a: StructureHandle, b: StructureHandle) -> StructureHandle:
    if a.number_type is not b.number_type:
        raise TypeMismatch(f"cannot combine {a} with {b}")
    return make_structure(a.number_type, a.scale * b.scale)


def group_inv(a: StructureHandle) -> StructureHandle:
    return make_structure(a.number_type, a.scale.inv())


def group_identity(t: NumberType) -> StructureHandle:
    return base_structure(t)


@dataclass(frozen=True)
class WyzStructure:
    """``{+, -, */w, y/, 0, z}`` with values mapped ``a -> z*a``.

    Only a negative control: it represents a scaled field iff ``w == y == z``.
    """

    w: CRational
    y: CRational
    z: CRational

    @property
    def is_scaled_structure(self) -> bool:
        return self.w == self.y == self.z

    def view(self) -> ExternalView:
        return ExternalView(BaseView(), self.w, self.y, self.z)

    def __str__(self) -> str:
        return f"wyz:w={format_value(self.w)},y={format_value(self.y)},z={format_value(self.z)}"


def make_wyz_structure(w: object, y: object, z: object) -> WyzStructure:
    vals = [as_crational(v) for v in (w, y, z)]
    if not all(vals):
        raise InvalidScale("w, y and z must be nonzero")
    return WyzStructure(*vals)


# --------------------------------------------------------------------------
# views
# --------------------------------------------------------------------------


class BaseView:
    """Arithmetic of the scale-1 structure on exact values."""

    name = "base"
    zero = ZERO
    one = ONE

    def embed(self, a: object) -> CRational:
        return as_crational(a)

    def add(self, x: CRational, y: CRational) -> CRational:
        return x + y

    def sub(self, x: CRational, y: CRational) -> CRational:
        return x - y

    def mul(self, x: CRational, y: CRational) -> CRational:
        return x * y

    def div(self, x: CRational, y: CRational) -> CRational:
        if not y:
            raise DivisionByZero("div")
        return x / y

    def conj(self, x: CRational) -> CRational:
        return x.conj()

    def lt(self, x: CRational, y: CRational) -> bool:
        if x.im or y.im:
            raise UnsupportedOperation("order is defined on real values only")
        return x.re < y.re

    def eq(self, x: CRational, y: CRational) -> bool:
        return x == y

    def is_zero(self, x: CRational) -> bool:
        return not x

    def abs(self, x: CRational) -> CRational:
        return self.sub(self.zero, x) if self.lt(x, self.zero) else x

    def render(self, x: CRational) -> str:
        return format_value(x)

    def base_value(self, x: CRational) -> CRational:
        return x


class InternalView:
    """``S_p`` from the inside: operations on :class:`ScaledValue`."""

    name = "internal"

    def __init__(self, s: StructureHandle) -> None:
        self.structure = s
        self.zero = ScaledValue(ZERO, s)
        self.one = ScaledValue(ONE, s)

    def embed(self, a: object) -> ScaledValue:
        return same_value(a, self.structure)

    def add(self, x: ScaledValue, y: ScaledValue) -> ScaledValue:
        return add_scaled(x, y)

    def sub(self, x: ScaledValue, y: ScaledValue) -> ScaledValue:
        if self.structure.number_type is NumberType.NATURAL:
            raise UnsupportedOperation("subtraction is not an operation of a natural structure")
        return sub_scaled(x, y)

    def mul(self, x: ScaledValue, y: ScaledValue) -> ScaledValue:
        return mul_scaled(x, y)

    def div(self, x: ScaledValue, y: ScaledValue) -> ScaledValue:
        return div_scaled(x, y)

    def conj(self, x: ScaledValue) -> ScaledValue:
        return conj_scaled(x)

    def lt(self, x: ScaledValue, y: ScaledValue) -> bool:
        return lt_scaled(x, y)

    def eq(self, x: ScaledValue, y: ScaledValue) -> bool:
        return x == y

    def is_zero(self, x: ScaledValue) -> bool:
        return not x.internal

    def abs(self, x: ScaledValue) -> ScaledValue:
        return ScaledValue(-x.internal, x.owner) if self.lt(x, self.zero) else x

    def render(self, x: ScaledValue) -> str:
        return format_value(x.internal)

    def base_value(self, x: ScaledValue) -> CRational:
        return x.correspondent


CORRUPTIONS = ("unscaled_div", "unflipped_order", "conj_cstar")


class ExternalView:
    """A scaled structure written with the operations of an inner view.

    With ``inner = BaseView()`` and ``w = y = z = p`` this is ``S^p``:
    values ``p*a``, ``x*y/p``, ``p*(x/y)``, ``z*conj(x/z)``, constant ``p``.
    Stacking it on ``InternalView(S_p)`` with scale ``q`` gives the two-step
    representation ``S^{q|p}``.

    ``corrupt`` swaps in one deliberately wrong rule for negative controls.
    """

    name = "external"

    def __init__(
        self,
        inner: BaseView | InternalView | ExternalView,
        w: object,
        y: object | None = None,
        z: object | None = None,
        corrupt: str | None = None,
    ) -> None:
        if corrupt is not None and corrupt not in CORRUPTIONS:
            raise ValueError(f"unknown corruption {corrupt!r}")
        self.inner = inner
        self._w = inner.embed(w)
        self._y = inner.embed(w if y is None else y)
        self._z = inner.embed(w if z is None else z)
        self.corrupt = corrupt
        self.structure: StructureHandle | None = None
        self.zero = inner.zero
        self.one = self._z
        self._positive: bool | None = None

    @classmethod
    def of(cls, s: StructureHandle, corrupt: str | None = None) -> ExternalView:
        view = cls(BaseView(), s.scale, corrupt=corrupt)
        view.structure = s
        return view

    def embed(self, a: object) -> object:
        return self.inner.mul(self._z, self.inner.embed(a))

    def add(self, x, y):
        return self.inner.add(x, y)

    def sub(self, x, y):
        return self.inner.sub(x, y)

    def mul(self, x, y):
        return self.inner.div(self.inner.mul(x, y), self._w)

    def div(self, x, y):
        if self.inner.is_zero(y):
            raise DivisionByZero("div")
        if self.corrupt == "unscaled_div":
            return self.inner.div(x, y)
        return self.inner.mul(self._y, self.inner.div(x, y))

    def conj(self, x):
        inner = self.inner
        unscaled = inner.conj(inner.div(x, self._z))
        if self.corrupt == "conj_cstar":
            return inner.mul(inner.conj(self._z), unscaled)
        return inner.mul(self._z, unscaled)

    def _scale_positive(self) -> bool:
        if self._positive is None:
            self._positive = self.inner.lt(self.inner.zero, self._z)
        return self._positive

    def lt(self, x, y) -> bool:
        # a negative scale reflects the structure: < is read as >
        if self.corrupt == "unflipped_order" or self._scale_positive():
            return self.inner.lt(x, y)
        return self.inner.lt(y, x)

    def eq(self, x, y) -> bool:
        return self.inner.eq(x, y)

    def is_zero(self, x) -> bool:
        return self.inner.is_zero(x)

    def abs(self, x):
        return self.sub(self.zero, x) if self.lt(x, self.zero) else x

    def render(self, x) -> str:
        return self.inner.render(x)

    def base_value(self, x) -> CRational:
        return self.inner.base_value(x)


def view_for(name: str, s: StructureHandle) -> BaseView | ExternalView | InternalView:
    if name == "base":
        return BaseView()
    if name == "external":
        return ExternalView.of(s)
    if name == "internal":
        return InternalView(s)
    raise ValueError(f"unknown view {name!r}")
