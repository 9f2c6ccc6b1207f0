import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalerep.errors import ParseError
from scalerep.exact import CRational
from scalerep.terms import (
    ALL_KINDS,
    Add,
    Const,
    Div,
    Mul,
    Pow,
    Sub,
    Sum,
    Var,
    free_vars,
    node_kinds,
    parse_term,
    pretty,
    random_term,
)


def test_parse_examples():
    assert parse_term("(2*x + 1)/y") == Div(Add(Mul(Const(2), Var("x")), Const(1)), Var("y"))
    t = parse_term("sum(j=1..3; x^j)")
    assert t == Sum("j", 1, 3, Pow(Var("x"), "j"))


def test_rational_literal_vs_division():
    assert parse_term("3/2") == Const(F(3, 2))
    assert parse_term("3 / 2") == Div(Const(3), Const(2))


def test_unary_minus():
    assert parse_term("-3/2") == Const(F(-3, 2))
    assert parse_term("-x") == Sub(Const(0), Var("x"))
    assert parse_term("-2^2") == Sub(Const(0), Pow(Const(2), 2))


def test_complex_literals():
    assert parse_term("(2+1i)") == Const(CRational(2, 1))
    assert parse_term("(-1/2-3/4i)*x") == Mul(Const(CRational(F(-1, 2), F(-3, 4))), Var("x"))
    assert parse_term("i") == Var("i")
    assert parse_term("1i") == Const(CRational(0, 1))


@pytest.mark.parametrize(
    "text, position",
    [("2*", 2), ("x/", 2), ("(x", 2), ("x^0", 2), ("sum(j=3..1; j)", 6), ("x $ y", 2), ("x y", 2)],
)
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as exc:
        parse_term(text)
    assert exc.value.position == position
    assert exc.value.expected


def test_pretty_examples():
    assert pretty(parse_term("(2*x + 1)/y")) == "(((2 * x) + 1) / y)"
    assert pretty(parse_term("sum(j=1..3; x^j)")) == "sum(j=1..3; x^j)"
    assert pretty(Const(CRational(2, 1))) == "(2+1i)"
    assert pretty(Const(F(-3, 2))) == "(-3/2)"
    assert pretty(Pow(Pow(Var("x"), 2), 3)) == "(x^2)^3"


@settings(max_examples=300)
@given(st.integers(0, 10**9), st.integers(1, 7))
def test_pretty_round_trip(seed, depth):
    t = random_term(random.Random(seed), depth=depth)
    assert parse_term(pretty(t)) == t


def test_free_vars():
    t = parse_term("sum(k=1..2; x^k * y) + z")
    assert free_vars(t) == {"x", "y", "z"}


def test_sampler_is_seeded_and_covers_kinds():
    a = [random_term(random.Random(5), 5) for _ in range(3)]
    b = [random_term(random.Random(5), 5) for _ in range(3)]
    assert a == b
    rng = random.Random(0)
    seen = set()
    for _ in range(200):
        seen |= node_kinds(random_term(rng, 6))
    assert seen == {Const, Var, Add, Sub, Mul, Div, Pow, Sum}
    assert len(ALL_KINDS) == 8


def test_sampler_respects_kinds():
    rng = random.Random(1)
    for _ in range(100):
        kinds = node_kinds(random_term(rng, 5, kinds=("const", "var", "add", "mul", "pow")))
        assert not kinds & {Sub, Div, Sum}
