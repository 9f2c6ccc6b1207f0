"""Evaluate terms in the base, external and internal views of a structure.

The external value of every term is ``p`` times its base value, and its
internal value equals its base value.  Nothing here computes those results
from each other: each view folds the term with its own operations, and the
tests compare them.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from fractions import Fraction

from .errors import DivisionByZero, DomainError, UnboundVariable, UnsupportedOperation
from .exact import ZERO, CRational, as_crational
from .structures import (
    BaseView,
    ExternalView,
    InternalView,
    NumberType,
    ScaledValue,
    StructureHandle,
    in_value_domain,
)
from .terms import Add, Const, Div, Mul, Pow, Sub, Sum, Term, Var, pretty

Environment = Mapping[str, object]


def _power(view, x, n: int):
    # square-and-multiply with the view's (associative) multiplication
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else view.mul(result, base)
        n >>= 1
        if n:
            base = view.mul(base, base)
    return result


def _fold(t: Term, env: Mapping[str, CRational], view, indices: dict[str, int]):
    if isinstance(t, Const):
        return view.embed(t.value)
    if isinstance(t, Var):
        if t.name in indices:
            return view.embed(indices[t.name])
        try:
            return view.embed(env[t.name])
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Add):
        return view.add(_fold(t.left, env, view, indices), _fold(t.right, env, view, indices))
    if isinstance(t, Sub):
        return view.sub(_fold(t.left, env, view, indices), _fold(t.right, env, view, indices))
    if isinstance(t, Mul):
        return view.mul(_fold(t.left, env, view, indices), _fold(t.right, env, view, indices))
    if isinstance(t, Div):
        num = _fold(t.left, env, view, indices)
        den = _fold(t.right, env, view, indices)
        try:
            return view.div(num, den)
        except DivisionByZero as exc:
            raise DivisionByZero(exc.operation, subterm=pretty(t)) from None
    if isinstance(t, Pow):
        n = t.exponent
        if isinstance(n, str):
            if n not in indices:
                raise UnboundVariable(n)
            n = indices[n]
            if n < 1:
                raise DomainError(f"exponent {t.exponent}={n} is not a positive integer")
        return _power(view, _fold(t.base, env, view, indices), n)
    if isinstance(t, Sum):
        acc = None
        for j in range(t.lower, t.upper + 1):
            value = _fold(t.body, env, view, {**indices, t.index: j})
            acc = value if acc is None else view.add(acc, value)
        return acc
    raise TypeError(f"not a term: {t!r}")


def evaluate(t: Term, env: Environment, view):
    """Fold ``t`` with the operations of ``view``; bindings are base values."""
    return _fold(t, {k: as_crational(v) for k, v in env.items()}, view, {})


def check_signature(t: Term, number_type: NumberType) -> None:
    """Reject operations and constants foreign to the number type.

    Natural structures have ``+``, ``*`` and powers; integers add ``-``;
    division belongs to fields only.
    """
    if isinstance(t, Const):
        if not in_value_domain(t.value, number_type):
            raise DomainError(f"constant {pretty(t)} is not a {number_type.name.lower()} value")
        return
    if isinstance(t, Var):
        return
    if isinstance(t, Sub) and number_type is NumberType.NATURAL:
        raise UnsupportedOperation("subtraction is not an operation of a natural structure")
    if isinstance(t, Div) and not number_type.is_field:
        raise UnsupportedOperation(f"division is not an operation of a {number_type.name.lower()} structure")
    if isinstance(t, (Add, Sub, Mul, Div)):
        check_signature(t.left, number_type)
        check_signature(t.right, number_type)
    elif isinstance(t, Pow):
        check_signature(t.base, number_type)
    elif isinstance(t, Sum):
        if number_type is NumberType.NATURAL and t.lower < 0:
            raise DomainError("sum index takes negative values in a natural structure")
        check_signature(t.body, number_type)


def _prepare(t: Term, env: Environment, s: StructureHandle) -> dict[str, CRational]:
    check_signature(t, s.number_type)
    out = {}
    for name, value in env.items():
        v = as_crational(value)
        if not in_value_domain(v, s.number_type):
            raise DomainError(f"binding {name}={value} is not a {s.number_type.name.lower()} value")
        out[name] = v
    return out


def eval_base(t: Term, env: Environment) -> CRational:
    return evaluate(t, env, BaseView())


def eval_external(t: Term, env: Environment, s: StructureHandle) -> CRational:
    """Evaluate in ``S^p``: each binding ``a`` enters as ``p*a`` and the
    operations are ``+``, ``-``, ``*/p``, ``p/``."""
    return evaluate(t, _prepare(t, env, s), ExternalView.of(s))


def eval_internal(t: Term, env: Environment, s: StructureHandle) -> ScaledValue:
    return evaluate(t, _prepare(t, env, s), InternalView(s))


def check_equation(
    t: Term, u: Term, env: Environment, s: StructureHandle
) -> tuple[bool, bool, bool]:
    """Verdicts of ``t = u`` in the base, external and internal views."""
    return (
        eval_base(t, env) == eval_base(u, env),
        eval_external(t, env, s) == eval_external(u, env, s),
        eval_internal(t, env, s) == eval_internal(u, env, s),
    )


def poly_term(coeffs: Sequence[object], var: str = "x", start: int = 0) -> Term:
    """``sum_j coeffs[j - start] * var^j`` for ``j = start, start+1, ...``."""
    if not coeffs:
        return Const(0)
    parts: list[Term] = []
    for j, b in enumerate(coeffs, start=start):
        c = Const(as_crational(b))
        parts.append(c if j == 0 else Mul(c, Pow(Var(var), j)))
    t = parts[0]
    for part in parts[1:]:
        t = Add(t, part)
    return t


def scaled_poly_root_check(
    coeffs: Sequence[object], a: object, s: StructureHandle
) -> tuple[bool, bool, bool]:
    """Is ``a`` a root of ``sum_j b_j x^j`` in base, external and internal views?"""
    if s.number_type is not NumberType.COMPLEX:
        raise UnsupportedOperation("root mapping is checked on complex structures")
    t = poly_term(coeffs)
    env = {"x": a}
    return (
        eval_base(t, env) == ZERO,
        eval_external(t, env, s) == ZERO,
        eval_internal(t, env, s).internal == ZERO,
    )


def power_series_eval(
    coeffs: Sequence[object],
    n: int,
    x: object,
    s: StructureHandle,
    constant: object = 0,
) -> tuple[ScaledValue, CRational, CRational]:
    """``P(n, x) = constant + sum_{j=1..n} coeffs[j-1] x^j`` in all three views.

    Returns ``(internal, external, base)``; internal equals base as a value,
    external equals ``r`` times base.
    """
    if n < 1 or n != len(coeffs):
        raise ValueError("n must be >= 1 and equal to the number of coefficients")
    t = poly_term(list(coeffs), start=1)
    if constant:
        t = Add(Const(as_crational(constant)), t)
    env = {"x": x}
    return eval_internal(t, env, s), eval_external(t, env, s), eval_base(t, env)


def taylor_coefficients(f: str, n: int) -> tuple[Fraction, list[Fraction]]:
    """Exact Taylor data ``(constant, [a_1..a_n])`` of ``exp`` or ``sin`` at 0."""
    if f == "exp":
        return Fraction(1), [Fraction(1, math.factorial(j)) for j in range(1, n + 1)]
    if f == "sin":
        coeffs = []
        for j in range(1, n + 1):
            if j % 2:
                coeffs.append(Fraction((-1) ** ((j - 1) // 2), math.factorial(j)))
            else:
                coeffs.append(Fraction(0))
        return Fraction(0), coeffs
    raise ValueError(f"no series for {f!r}")


_ANALYTIC = {"exp": math.exp, "sin": math.sin}


def analytic_scaled(f: str, x: float, r: float) -> float:
    """``f_r(x_r)`` read in the base structure, for ``f`` in exp, sin, sin2.

    The external argument is ``r*x`` and the external function is
    ``X -> r*f(X/r)``.  ``sin2`` squares with the scaled product
    ``u*v/r``, giving ``r*sin(x)**2`` rather than ``r**2*sin(x)**2``.
    """
    if r == 0:
        raise ValueError("scale must be nonzero")
    arg = r * x
    if f == "sin2":
        s = r * math.sin(arg / r)
        return s * s / r
    try:
        fn = _ANALYTIC[f]
    except KeyError:
        raise ValueError(f"unknown analytic function {f!r}") from None
    return r * fn(arg / r)
