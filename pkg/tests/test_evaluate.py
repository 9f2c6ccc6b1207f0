import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gaussians, nonzero_gaussians, nonzero_rationals, rationals
from scalerep.errors import DivisionByZero, DomainError, UnboundVariable, UnsupportedOperation
from scalerep.evaluate import (
    analytic_scaled,
    check_equation,
    eval_base,
    eval_external,
    eval_internal,
    poly_term,
    power_series_eval,
    scaled_poly_root_check,
    taylor_coefficients,
)
from scalerep.exact import I, CRational, to_float
from scalerep.structures import NumberType, make_structure
from scalerep.terms import parse_term, random_term

RAT, CPX = NumberType.RATIONAL, NumberType.COMPLEX


def test_base_examples():
    assert eval_base(parse_term("x+1"), {"x": 2}) == 3
    assert eval_base(parse_term("sum(j=1..3; x^j)"), {"x": 2}) == 14
    with pytest.raises(DivisionByZero) as exc:
        eval_base(parse_term("1 + 1/x"), {"x": 0})
    assert exc.value.subterm == "(1 / x)"
    with pytest.raises(UnboundVariable):
        eval_base(parse_term("x + y"), {"x": 1})


def test_scaled_examples():
    s = make_structure(RAT, 3)
    t = parse_term("x*y")
    env = {"x": 2, "y": 5}
    assert eval_external(t, env, s) == 30
    v = eval_internal(t, env, s)
    assert v.internal == 10 and v.correspondent == 30
    r = make_structure(NumberType.INTEGER, -1)
    v = eval_internal(parse_term("x"), {"x": 4}, r)
    assert v.internal == 4 and v.correspondent == -4


def test_double_sum_form():
    # sum_{j,k} x^j / y^k scales like any other term
    t = parse_term("sum(j=1..2; sum(k=1..3; x^j / y^k))")
    env = {"x": F(3, 2), "y": F(-2, 5)}
    p = make_structure(RAT, F(7, 3))
    assert eval_external(t, env, p) == F(7, 3) * eval_base(t, env)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), nonzero_gaussians, gaussians, gaussians)
def test_homogeneity(seed, c, x, y):
    t = random_term(random.Random(seed), 5)
    s = make_structure(CPX, c)
    env = {"x": x, "y": y}
    try:
        base = eval_base(t, env)
    except ZeroDivisionError:
        return
    assert eval_external(t, env, s) == c * base
    assert eval_internal(t, env, s).internal == base


@given(rationals, rationals, nonzero_rationals)
def test_check_equation_identity(x, y, p):
    s = make_structure(RAT, p)
    lhs, rhs = parse_term("(x+y)^2"), parse_term("x^2 + 2*x*y + y^2")
    assert check_equation(lhs, rhs, {"x": x, "y": y}, s) == (True, True, True)
    assert check_equation(parse_term("x"), parse_term("x+1"), {"x": x}, s) == (False, False, False)


def test_signature_checks():
    n = make_structure(NumberType.NATURAL, 2)
    with pytest.raises(UnsupportedOperation):
        eval_external(parse_term("x - 1"), {"x": 3}, n)
    with pytest.raises(UnsupportedOperation):
        eval_external(parse_term("x / 1"), {"x": 3}, make_structure(NumberType.INTEGER, 2))
    with pytest.raises(DomainError):
        eval_external(parse_term("x + 1/2"), {"x": 3}, n)
    with pytest.raises(DomainError):
        eval_external(parse_term("x"), {"x": F(1, 2)}, n)


def test_poly_root_check():
    c = make_structure(CPX, CRational(2, 1))
    assert scaled_poly_root_check([1, 0, 1], I, c) == (True, True, True)
    assert scaled_poly_root_check([-1, 1], 2, c) == (False, False, False)
    assert scaled_poly_root_check([1, -2, 1], 1, c) == (True, True, True)


@given(nonzero_gaussians)
def test_poly_root_i_any_scale(c):
    assert scaled_poly_root_check([1, 0, 1], I, make_structure(CPX, c)) == (True, True, True)


def test_poly_term_shape():
    assert eval_base(poly_term([1, 2, 3]), {"x": 2}) == 1 + 4 + 12


def test_power_series():
    internal, external, base = power_series_eval([1, 1, 1], 3, F(1, 2), make_structure(RAT, 2))
    assert base == F(7, 8) and external == F(7, 4) and internal.internal == F(7, 8)
    internal, external, base = power_series_eval([1, 1], 2, F(1, 3), make_structure(RAT, 1))
    assert external == base


def test_taylor_partial_sums_scale():
    const, coeffs = taylor_coefficients("exp", 12)
    r = make_structure(RAT, F(-3, 2))
    _, external, base = power_series_eval(coeffs, 12, F(1, 2), r, const)
    assert external == F(-3, 2) * base
    assert abs(to_float(base) - math.exp(0.5)) < 1e-9


def test_analytic_scaling():
    assert analytic_scaled("exp", 0.5, 1.0) == pytest.approx(math.exp(0.5), abs=1e-15)
    assert analytic_scaled("sin", 0.3, -2.0) == pytest.approx(-2 * math.sin(0.3), abs=1e-15)
    x = 0.7
    assert analytic_scaled("sin2", x, 2.0) == pytest.approx(2 * math.sin(x) ** 2, rel=1e-14)
    assert analytic_scaled("sin2", x, 2.0) != pytest.approx(4 * math.sin(x) ** 2)
    with pytest.raises(ValueError):
        analytic_scaled("cos", 1.0, 1.0)
