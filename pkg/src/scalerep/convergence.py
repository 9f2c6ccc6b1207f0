"""Cauchy and limit conditions on explicit sequences, read in three views.

For a sequence ``a_1, a_2, ...`` the Cauchy condition at index ``h`` is
``|a_j - a_m| < eps`` for all ``j, m > h``.  Each named sequence knows
where the supremum of its tail gaps sits, so the condition reduces to one
comparison that every view evaluates with its own subtraction, absolute
value and order.  In ``S^r`` the tolerance enters as ``r*eps`` and, for
``r < 0``, the absolute value is the reflected one, ``r*|X/r|``.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .axioms import VIEW_ORDER, CheckReport, Failure
from .errors import BudgetExceeded
from .exact import format_value
from .structures import BaseView, ExternalView, InternalView, NumberType, make_structure

DEFAULT_EPS = (Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10**6))
DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class NamedSequence:
    """An exact sequence indexed from 1.

    ``tail`` says where ``sup_{j,m>h} |a_j - a_m|`` lives:

    * ``monotone``: at ``|a_{h+1} - limit|``, approached but not attained;
    * ``alternating``: at ``|a_{h+1} - a_{h+2}|``, attained;
    * ``constant``: zero;
    * ``unbounded``: no finite supremum.
    """

    name: str
    term: Callable[[int], Fraction]
    tail: str
    limit: Fraction | None = None


SEQUENCES = {
    "harmonic": NamedSequence("harmonic", lambda j: Fraction(1, j), "monotone", Fraction(0)),
    "shifted_harmonic": NamedSequence(
        "shifted_harmonic", lambda j: 1 + Fraction(1, j), "monotone", Fraction(1)),
    "alternating_geometric": NamedSequence(
        "alternating_geometric", lambda j: 1 + Fraction(-1, 2) ** j, "alternating", Fraction(1)),
    "constant": NamedSequence("constant", lambda j: Fraction(5, 7), "constant", Fraction(5, 7)),
    "linear": NamedSequence("linear", lambda j: Fraction(j), "unbounded"),
}


def get_sequence(seq: str | NamedSequence) -> NamedSequence:
    if isinstance(seq, NamedSequence):
        return seq
    try:
        return SEQUENCES[seq]
    except KeyError:
        raise ValueError(f"unknown sequence {seq!r}; known: {', '.join(SEQUENCES)}") from None


def _gap(view, x, y):
    return view.abs(view.sub(x, y))


def _below(view, gap, eps, attained: bool) -> bool:
    # sup < eps when attained, sup <= eps when only approached
    if attained:
        return view.lt(gap, eps)
    return not view.lt(eps, gap)


def _unbounded_cauchy(view, seq: NamedSequence, h: int, eps, cap: int) -> bool:
    # search for a violating pair (h+1, m); finding one refutes the condition
    first = view.embed(seq.term(h + 1))
    step = 1
    while step <= cap:
        if not view.lt(_gap(view, view.embed(seq.term(h + 1 + step)), first), eps):
            return False
        step *= 2
    raise BudgetExceeded(f"no violating pair for {seq.name} within {cap} terms", (view.name,))


def cauchy_holds(view, seq: NamedSequence, h: int, eps, cap: int = DEFAULT_CAP) -> bool:
    """Cauchy condition at ``h`` with tolerance ``eps`` (a base value)."""
    e = view.embed(eps)
    if seq.tail == "constant":
        return view.lt(view.zero, e)
    if seq.tail == "unbounded":
        return _unbounded_cauchy(view, seq, h, e, cap)
    nxt = view.embed(seq.term(h + 1))
    if seq.tail == "monotone":
        return _below(view, _gap(view, nxt, view.embed(seq.limit)), e, attained=False)
    if seq.tail == "alternating":
        return _below(view, _gap(view, nxt, view.embed(seq.term(h + 2))), e, attained=True)
    raise ValueError(f"unknown tail shape {seq.tail!r}")


def limit_holds(view, seq: NamedSequence, mu, h: int, eps, cap: int = DEFAULT_CAP) -> bool:
    """``|a_j - mu| < eps`` for all ``j > h``.

    Every tail of a named convergent sequence lies between ``a_{h+1}`` and
    ``a_{h+2}`` or between ``a_{h+1}`` and the limit, so the supremum of
    ``|a_j - mu|`` is reached at ``a_{h+1}``, ``a_{h+2}`` or approached at
    the limit ``L``.
    """
    e = view.embed(eps)
    m = view.embed(mu)
    if seq.tail == "unbounded":
        first = view.embed(seq.term(h + 1))
        if not view.lt(_gap(view, first, m), e):
            return False
        return _unbounded_cauchy(view, seq, h, e, cap)
    for j in (h + 1, h + 2):
        if not view.lt(_gap(view, view.embed(seq.term(j)), m), e):
            return False
    return _below(view, _gap(view, view.embed(seq.limit), m), e, attained=False)


def minimal_index(pred: Callable[[int], bool], cap: int = DEFAULT_CAP) -> int | None:
    """Least ``h`` in ``[0, cap]`` with ``pred(h)``, for ``pred`` monotone in
    ``h``; gallops then bisects.  ``None`` when even ``cap`` fails."""
    if pred(0):
        return 0
    lo, hi = 0, 1
    while not pred(hi):
        if hi >= cap:
            return None
        lo, hi = hi, min(2 * hi, cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _views(r):
    s = make_structure(NumberType.REAL, r)
    return s, (BaseView(), ExternalView.of(s), InternalView(s))


def _search(pred, cap):
    try:
        return minimal_index(pred, cap)
    except BudgetExceeded:
        return None


def _run(suite, seq, r, eps_schedule, cap, make_pred, extra_bindings=None) -> CheckReport:
    s, views = _views(r)
    report = CheckReport(suite, s.literal, 0, [], 0)
    for eps in eps_schedule:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("tolerances must be positive")
        found = {}
        for view in views:
            pred = make_pred(view, eps)
            found[view.name] = _search(pred, cap)
        report.cases += len(views)
        report.details[format_value(eps)] = dict(found)
        if all(h is None for h in found.values()):
            raise BudgetExceeded(
                f"{seq.name}: no index within cap {cap} for eps={format_value(eps)}",
                tuple(VIEW_ORDER),
            )
        reference = found["base"]
        bindings = {"sequence": seq.name, "eps": format_value(eps), **(extra_bindings or {})}
        for name in VIEW_ORDER[1:]:
            if found[name] != reference:
                report.failures.append(Failure(
                    f"{suite}.minimal_index", bindings, _h_text(found[name]), _h_text(reference), name))
    report.failures.sort(key=Failure.sort_key)
    return report


def _h_text(h: int | None) -> str:
    return "budget exceeded" if h is None else str(h)


def run_convergence_check(
    seq: str | NamedSequence,
    r: object,
    eps_schedule: Sequence[object] = DEFAULT_EPS,
    cap: int = DEFAULT_CAP,
) -> CheckReport:
    """Minimal Cauchy index for each tolerance, found independently in the
    base, external and internal views; they must agree.

    ``report.details`` maps each tolerance to the index per view.  Raises
    :class:`BudgetExceeded` when no view finds an index below ``cap``.
    """
    seq = get_sequence(seq)
    return _run("convergence", seq, r, eps_schedule, cap,
                lambda view, eps: lambda h: cauchy_holds(view, seq, h, eps, cap))


def run_limit_mapping(
    seq: str | NamedSequence,
    r: object,
    mu: object | None = None,
    eps_schedule: Sequence[object] = DEFAULT_EPS,
    cap: int = DEFAULT_CAP,
) -> CheckReport:
    """``lim a_j = mu`` in the base view against the scaled limit, whose
    correspondent is ``r*mu``, in the external and internal views.

    ``report.details["limit"]`` holds the limit read in each view as a base
    value (external and internal both give ``r*mu``).
    """
    seq = get_sequence(seq)
    mu = seq.limit if mu is None else Fraction(mu)
    if mu is None:
        raise ValueError(f"{seq.name} has no known limit")
    report = _run("limit", seq, r, eps_schedule, cap,
                  lambda view, eps: lambda h: limit_holds(view, seq, mu, h, eps, cap),
                  {"mu": format_value(mu)})
    s, views = _views(r)
    report.details["limit"] = {v.name: v.base_value(v.embed(mu)) for v in views}
    expected = s.scale * mu
    for view in views[1:]:
        got = view.base_value(view.embed(mu))
        report.cases += 1
        if got != expected:
            report.failures.append(Failure(
                "limit.correspondent", {"sequence": seq.name, "mu": format_value(mu)},
                format_value(got), format_value(expected), view.name))
    report.failures.sort(key=Failure.sort_key)
    return report
