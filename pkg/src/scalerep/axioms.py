"""Seeded axiom-equivalence checks over the three views of a structure.

Each :class:`AxiomCase` is written once against the small view interface
and evaluated on the same sampled base values in the base view, the
external view ``S^p`` and the internal view ``S_p``.  A ``law`` must hold
in every view; a ``relation`` only has to give the same verdict everywhere.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ScaleRepError, TypeMismatch, WitnessRequired
from .evaluate import evaluate, poly_term
from .exact import ONE, ZERO, CRational, I, as_crational, format_value
from .structures import (
    BaseView,
    ExternalView,
    InternalView,
    NumberType,
    StructureHandle,
    base_structure,
    in_value_domain,
    make_structure,
    make_wyz_structure,
    member_of_base_set,
)
from .terms import INT_POOL, REAL_POOL, parse_term, pretty, random_term

VIEW_ORDER = ("base", "external", "internal")
_NAMES = ("a", "b", "c", "d")


@dataclass(frozen=True)
class AxiomCase:
    """One quantified axiom.

    ``fn(view, *values)`` receives base values and embeds them itself.  For
    ``equation`` cases it returns ``(lhs, rhs)`` (or ``None`` when a
    precondition does not hold); otherwise it returns a bool.
    """

    id: str
    arity: int
    fn: Callable
    kind: str = "law"
    equation: bool = True


@dataclass(frozen=True)
class Failure:
    axiom: str
    bindings: dict[str, str]
    lhs: str
    rhs: str
    view: str

    def sort_key(self) -> tuple:
        return (self.axiom, tuple(sorted(self.bindings.items())), VIEW_ORDER.index(self.view))

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "bindings": dict(self.bindings),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "view": self.view,
        }


@dataclass
class CheckReport:
    suite: str
    structure: str
    cases: int
    failures: list[Failure]
    seed: int
    # not part of the JSON schema
    witness: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "structure": self.structure,
            "cases": self.cases,
            "failures": [f.to_dict() for f in self.failures],
            "seed": self.seed,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def _finish(report: CheckReport) -> CheckReport:
    report.failures.sort(key=Failure.sort_key)
    return report


# --------------------------------------------------------------------------
# case library
# --------------------------------------------------------------------------


def _field_cases() -> list[AxiomCase]:
    def add_assoc(V, a, b, c):
        a, b, c = V.embed(a), V.embed(b), V.embed(c)
        return V.add(V.add(a, b), c), V.add(a, V.add(b, c))

    def add_comm(V, a, b):
        a, b = V.embed(a), V.embed(b)
        return V.add(a, b), V.add(b, a)

    def mul_assoc(V, a, b, c):
        a, b, c = V.embed(a), V.embed(b), V.embed(c)
        return V.mul(V.mul(a, b), c), V.mul(a, V.mul(b, c))

    def mul_comm(V, a, b):
        a, b = V.embed(a), V.embed(b)
        return V.mul(a, b), V.mul(b, a)

    def distributivity(V, a, b, c):
        a, b, c = V.embed(a), V.embed(b), V.embed(c)
        return V.mul(a, V.add(b, c)), V.add(V.mul(a, b), V.mul(a, c))

    def add_identity(V, a):
        a = V.embed(a)
        return V.add(a, V.zero), a

    def mul_identity(V, a):
        a = V.embed(a)
        return V.mul(a, V.one), a

    def add_inverse(V, a):
        a = V.embed(a)
        return V.add(a, V.sub(V.zero, a)), V.zero

    def mul_inverse(V, a):
        a = V.embed(a)
        if V.is_zero(a):
            return None
        return V.mul(a, V.div(V.one, a)), V.one

    def mul_div_inverse(V, a, b):
        a, b = V.embed(a), V.embed(b)
        if V.is_zero(b):
            return None
        return V.mul(V.div(a, b), b), a

    def zero_ne_one(V):
        return not V.eq(V.zero, V.one)

    return [
        AxiomCase("field.add_assoc", 3, add_assoc),
        AxiomCase("field.add_comm", 2, add_comm),
        AxiomCase("field.mul_assoc", 3, mul_assoc),
        AxiomCase("field.mul_comm", 2, mul_comm),
        AxiomCase("field.distributivity", 3, distributivity),
        AxiomCase("field.add_identity", 1, add_identity),
        AxiomCase("field.mul_identity", 1, mul_identity),
        AxiomCase("field.add_inverse", 1, add_inverse),
        AxiomCase("field.mul_inverse", 1, mul_inverse),
        AxiomCase("field.mul_div_inverse", 2, mul_div_inverse),
        AxiomCase("field.zero_ne_one", 0, zero_ne_one, equation=False),
    ]


def _order_cases() -> list[AxiomCase]:
    def irreflexive(V, a):
        a = V.embed(a)
        return not V.lt(a, a)

    def transitivity(V, a, b, c):
        a, b, c = V.embed(a), V.embed(b), V.embed(c)
        return not (V.lt(a, b) and V.lt(b, c)) or V.lt(a, c)

    def totality(V, a, b):
        a, b = V.embed(a), V.embed(b)
        return V.lt(a, b) + V.eq(a, b) + V.lt(b, a) == 1

    def translation(V, a, b, c):
        a, b, c = V.embed(a), V.embed(b), V.embed(c)
        return not V.lt(a, b) or V.lt(V.add(a, c), V.add(b, c))

    def mul_positive(V, a, b, c):
        a, b, c = V.embed(a), V.embed(b), V.embed(c)
        if not (V.lt(V.zero, c) and V.lt(a, b)):
            return True
        return V.lt(V.mul(a, c), V.mul(b, c))

    def zero_lt_one(V):
        return V.lt(V.zero, V.one)

    def relation(V, a, b):
        return V.lt(V.embed(a), V.embed(b))

    return [
        AxiomCase("order.irreflexive", 1, irreflexive, equation=False),
        AxiomCase("order.transitivity", 3, transitivity, equation=False),
        AxiomCase("order.totality", 2, totality, equation=False),
        AxiomCase("order.translation", 3, translation, equation=False),
        AxiomCase("order.mul_positive", 3, mul_positive, equation=False),
        AxiomCase("order.zero_lt_one", 0, zero_lt_one, equation=False),
        AxiomCase("order.relation", 2, relation, kind="relation", equation=False),
    ]


def _nat_cases(s: StructureHandle) -> list[AxiomCase]:
    field_like = {c.id.split(".")[1]: c for c in _field_cases()}
    semiring = [
        AxiomCase(f"nat.{name}", field_like[name].arity, field_like[name].fn)
        for name in ("add_assoc", "add_comm", "mul_assoc", "mul_comm",
                     "distributivity", "add_identity", "mul_identity")
    ]

    def mul_zero(V, a):
        return V.mul(V.embed(a), V.zero), V.zero

    def discreteness(V, a):
        # 0 < 1 and nothing lies strictly between 0 and 1
        a = V.embed(a)
        return V.lt(V.zero, V.one) and not (V.lt(V.zero, a) and V.lt(a, V.one))

    def difference(V, a, b):
        if not a.re < b.re:
            return None
        return V.add(V.embed(a), V.embed(b - a)), V.embed(b)

    def membership(V, a):
        target = base_structure(s.number_type) if V.name == "base" else s
        return member_of_base_set(V.base_value(V.embed(a)), target)

    return semiring + [
        AxiomCase("nat.mul_zero", 1, mul_zero),
        AxiomCase("nat.discreteness", 1, discreteness, equation=False),
        AxiomCase("nat.difference", 2, difference),
        AxiomCase("nat.base_set_membership", 1, membership, equation=False),
    ]


def _expand_roots(roots: Sequence[CRational]) -> list[CRational]:
    coeffs = [ONE]
    for r in roots:
        nxt = [ZERO] * (len(coeffs) + 1)
        for k, b in enumerate(coeffs):
            nxt[k + 1] += b
            nxt[k] -= r * b
        coeffs = nxt
    return coeffs


def _conj_cases() -> list[AxiomCase]:
    def involution(V, a):
        a = V.embed(a)
        return V.conj(V.conj(a)), a

    def identity_real(V):
        return V.conj(V.one), V.one

    def conj_mul(V, a, b):
        a, b = V.embed(a), V.embed(b)
        return V.conj(V.mul(a, b)), V.mul(V.conj(a), V.conj(b))

    def conj_add(V, a, b):
        a, b = V.embed(a), V.embed(b)
        return V.conj(V.add(a, b)), V.add(V.conj(a), V.conj(b))

    def norm_real(V, a):
        a = V.embed(a)
        n = V.mul(a, V.conj(a))
        return V.conj(n), n

    def root_deg2(V, a, b):
        t = poly_term(_expand_roots([a, b]))
        return evaluate(t, {"x": b}, V), V.zero

    def root_deg4(V, a, b, c):
        t = poly_term(_expand_roots([a, b, c, I]))
        return evaluate(t, {"x": c}, V), V.zero

    def nonroot(V, a, b):
        t = poly_term(_expand_roots([a, b]))
        return V.is_zero(evaluate(t, {"x": a + 1}, V))

    return [
        AxiomCase("complex.conj_involution", 1, involution),
        AxiomCase("complex.identity_real", 0, identity_real),
        AxiomCase("complex.conj_mul", 2, conj_mul),
        AxiomCase("complex.conj_add", 2, conj_add),
        AxiomCase("complex.norm_real", 1, norm_real),
        AxiomCase("complex.root_mapping_deg2", 2, root_deg2),
        AxiomCase("complex.root_mapping_deg4", 3, root_deg4),
        AxiomCase("complex.root_verdict", 2, nonroot, kind="relation", equation=False),
    ]


# --------------------------------------------------------------------------
# sampling and the generic runner
# --------------------------------------------------------------------------


def _boundary(s: StructureHandle) -> list[CRational]:
    t = s.number_type
    if t is NumberType.NATURAL:
        pool = [0, 1, 2, s.scale]
    elif t is NumberType.INTEGER:
        pool = [0, 1, -1, 2, s.scale]
    else:
        pool = [0, 1, -1, Fraction(1, 2), Fraction(-1, 2), s.scale, s.scale.inv()]
        if t is NumberType.COMPLEX:
            pool += [I, -I]
    out: list[CRational] = []
    for v in pool:
        v = as_crational(v)
        if in_value_domain(v, t) and v not in out:
            out.append(v)
    return out


def _draw(t: NumberType, rng: random.Random) -> CRational:
    if t is NumberType.NATURAL:
        return as_crational(rng.randint(0, 20))
    if t is NumberType.INTEGER:
        return as_crational(rng.randint(-20, 20))
    re = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
    if t is NumberType.COMPLEX:
        return CRational(re, Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
    return as_crational(re)


def _samples(s: StructureHandle, count: int, arity: int, seed: int):
    rng = random.Random(seed)
    pool = _boundary(s)
    n = len(pool)
    for i in range(count):
        # boundary rotations, then boundary diagonals (a = b = c), then random
        if i < n:
            yield tuple(pool[(i + k) % n] for k in range(arity))
        elif i < 2 * n:
            yield (pool[i - n],) * arity
        else:
            yield tuple(_draw(s.number_type, rng) for _ in range(arity))


def _outcome(case: AxiomCase, view, values) -> tuple[bool, str, str]:
    try:
        result = case.fn(view, *values)
    except (ScaleRepError, ArithmeticError, ValueError, TypeError) as exc:
        return False, f"error: {exc}", "defined"
    if not case.equation:
        return bool(result), str(bool(result)).lower(), "true"
    if result is None:
        return True, "vacuous", "vacuous"
    lhs, rhs = result
    return view.eq(lhs, rhs), view.render(lhs), view.render(rhs)


def _views(s: StructureHandle, corrupt: str | None):
    return (BaseView(), ExternalView.of(s, corrupt), InternalView(s))


def run_cases(
    suite: str,
    s: StructureHandle,
    cases: Sequence[AxiomCase],
    samples: int,
    seed: int,
    corrupt: str | None = None,
) -> CheckReport:
    """Evaluate every case on ``samples`` bindings in all three views."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    views = _views(s, corrupt)
    arity = max(c.arity for c in cases)
    report = CheckReport(suite, s.literal, 0, [], seed)
    for values in _samples(s, samples, arity, seed):
        for case in cases:
            args = values[: case.arity]
            bindings = {_NAMES[k]: format_value(v) for k, v in enumerate(args)}
            outcomes = [_outcome(case, v, args) for v in views]
            report.cases += 1
            if case.kind == "relation":
                reference = outcomes[0][0]
                for view, (ok, _, _) in zip(views, outcomes):
                    if ok != reference:
                        report.failures.append(Failure(
                            case.id, bindings, str(ok).lower(), str(reference).lower(), view.name))
                continue
            for view, (ok, lhs, rhs) in zip(views, outcomes):
                if not ok:
                    report.failures.append(Failure(case.id, bindings, lhs, rhs, view.name))
    if report.failures and report.witness is None:
        first = report.failures[0]
        report.witness = f"{first.axiom} {first.bindings}"
    return _finish(report)


def _require(s: StructureHandle, ok: bool, suite: str) -> None:
    if not ok:
        raise TypeMismatch(f"the {suite} suite does not apply to {s}")


def run_field_suite(s: StructureHandle, samples: int = 1000, seed: int = 0,
                    corrupt: str | None = None) -> CheckReport:
    _require(s, s.number_type.is_field, "field")
    return run_cases("field", s, _field_cases(), samples, seed, corrupt)


def run_order_suite(s: StructureHandle, samples: int = 1000, seed: int = 0,
                    corrupt: str | None = None) -> CheckReport:
    _require(s, s.number_type.is_ordered, "order")
    return run_cases("order", s, _order_cases(), samples, seed, corrupt)


def run_nat_suite(s: StructureHandle, samples: int = 1000, seed: int = 0,
                  corrupt: str | None = None) -> CheckReport:
    _require(s, s.number_type is NumberType.NATURAL, "nat")
    return run_cases("nat", s, _nat_cases(s) + _order_cases(), samples, seed, corrupt)


def run_conjugation_suite(s: StructureHandle, samples: int = 1000, seed: int = 0,
                          corrupt: str | None = None) -> CheckReport:
    _require(s, s.number_type is NumberType.COMPLEX, "conj")
    return run_cases("conj", s, _conj_cases(), samples, seed, corrupt)


# --------------------------------------------------------------------------
# real substructure of a complex structure
# --------------------------------------------------------------------------


def witness_order(a: object, b: object, g: object | None, c: object) -> tuple[bool, bool, bool]:
    """Is ``b - a`` the positive real ``d = conj(g)*g``, read in each view?

    Base: ``a + d == b``.  External: ``ca + (cg)^* x (cg) == cb`` with the
    scaled conjugation and product.  Internal: the same with ``a_c, b_c, g_c``.
    Also requires ``a`` and ``b`` to be real and ``g`` nonzero.
    """
    if g is None:
        raise WitnessRequired("order on the real substructure needs a two-square witness g")
    a, b, g, c = (as_crational(v) for v in (a, b, g, c))
    if not (a.is_real and b.is_real) or not g:
        return False, False, False
    s = make_structure(NumberType.COMPLEX, c)
    verdicts = []
    for view in _views(s, None):
        gv = view.embed(g)
        d = view.mul(view.conj(gv), gv)
        verdicts.append(view.eq(view.add(view.embed(a), d), view.embed(b)))
    return tuple(verdicts)


def _gaussian(rng: random.Random) -> CRational:
    while True:
        g = CRational(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                      Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        if g:
            return g


def run_substructure_suite(c: object, samples: int = 500, seed: int = 0,
                           triples: int = 100) -> CheckReport:
    """Element-set disjointness of ``R_c`` and ``R`` and witness-based order.

    (1) For sampled nonzero real ``a`` the element ``c*a`` is real exactly
    when ``c`` is real.  (2) For sampled ``a`` and nonzero Gaussian ``g``,
    with ``b = a + conj(g)*g``: ``a < b`` holds by sign and by witness in all
    three views, while the reversed pair ``(b, a)`` fails in all of them.
    """
    cv = as_crational(c)
    s = make_structure(NumberType.COMPLEX, cv)
    rng = random.Random(seed)
    report = CheckReport("substructure", s.literal, 0, [], seed)
    expect_real = cv.is_real
    axiom = "substructure.coincide" if expect_real else "substructure.disjoint"
    for _ in range(samples):
        a = Fraction(rng.randint(-40, 40) or 1, rng.randint(1, 12))
        element = cv * a
        report.cases += 1
        if element.is_real != expect_real:
            report.failures.append(Failure(
                axiom, {"a": format_value(a)}, format_value(element),
                "real" if expect_real else "non-real", "base"))
    for _ in range(triples):
        a = as_crational(Fraction(rng.randint(-40, 40), rng.randint(1, 12)))
        g = _gaussian(rng)
        b = a + g.conj() * g
        bindings = {"a": format_value(a), "b": format_value(b), "g": format_value(g)}
        report.cases += 1
        forward = witness_order(a, b, g, cv)
        by_sign = BaseView().lt(a, b)
        for name, ok in zip(VIEW_ORDER, forward):
            if not (ok and by_sign):
                report.failures.append(Failure(
                    "substructure.witness_order", bindings, str(ok).lower(), "true", name))
        backward = witness_order(b, a, g, cv)
        if any(backward) or BaseView().lt(b, a):
            for name, ok in zip(VIEW_ORDER, backward):
                report.failures.append(Failure(
                    "substructure.witness_order_reversed", bindings, str(ok).lower(), "false", name))
    return _finish(report)


# --------------------------------------------------------------------------
# the {+, -, */w, y/, 0, z} negative control
# --------------------------------------------------------------------------

_WYZ_WITNESSES = ("1", "x*y", "x/y")


def _homogeneous(term, env, view, z) -> tuple[bool, str, str]:
    ext = evaluate(term, env, view)
    base = evaluate(term, env, BaseView())
    return ext == z * base, format_value(ext), format_value(z * base)


def run_wyz_control(w: object, y: object, z: object, samples: int = 200,
                    seed: int = 0) -> CheckReport:
    """Homogeneity of ``{+, -, */w, y/, 0, z}``: every term should scale by ``z``.

    Fixed witnesses come first, smallest first: the identity ``x*1 = x``,
    then ``x*y`` and ``x/y`` at ``x = y = 1``; then ``samples`` random terms.
    The first failing one is stored in ``report.witness``.
    """
    wyz = make_wyz_structure(w, y, z)
    view = wyz.view()
    zv = wyz.z
    rng = random.Random(seed)
    report = CheckReport("wyz", str(wyz), 0, [], seed)

    def record(term_text: str, env: dict, ok: bool, lhs: str, rhs: str) -> None:
        report.cases += 1
        if ok:
            return
        bindings = {"term": term_text, **{k: format_value(v) for k, v in sorted(env.items())}}
        report.failures.append(Failure("wyz.homogeneity", bindings, lhs, rhs, "external"))
        if report.witness is None:
            report.witness = term_text

    # x*1 = x: the external constant 1 must act as the identity
    x = view.embed(ONE)
    prod = view.mul(x, view.one)
    record("1", {"x": ONE}, prod == x, format_value(prod), format_value(x))
    for text in _WYZ_WITNESSES[1:]:
        env = {"x": ONE, "y": ONE}
        record(text, env, *_homogeneous(parse_term(text), env, view, zv))

    pool = tuple(v for v in REAL_POOL if v) + tuple(Fraction(v) for v in INT_POOL if v)
    done = 0
    while done < samples:
        term = random_term(rng, depth=4, constants=REAL_POOL)
        env = {"x": as_crational(rng.choice(pool)), "y": as_crational(rng.choice(pool))}
        try:
            outcome = _homogeneous(term, env, view, zv)
        except ZeroDivisionError:
            continue
        record(pretty(term), env, *outcome)
        done += 1
    return _finish(report)


SUITES = {
    "field": run_field_suite,
    "order": run_order_suite,
    "nat": run_nat_suite,
    "conj": run_conjugation_suite,
}


__all__ = [
    "AxiomCase",
    "CheckReport",
    "Failure",
    "SUITES",
    "run_cases",
    "run_conjugation_suite",
    "run_field_suite",
    "run_nat_suite",
    "run_order_suite",
    "run_substructure_suite",
    "run_wyz_control",
    "witness_order",
]
