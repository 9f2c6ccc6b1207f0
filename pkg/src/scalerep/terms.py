"""Term language: AST, parser, pretty-printer and a seeded term sampler.

Grammar (whitespace is insignificant between tokens)::

    expr     = product { ("+" | "-") product } ;
    product  = unary { ("*" | "/") unary } ;
    unary    = "-" unary | power ;
    power    = primary [ "^" exponent ] ;
    exponent = INT | NAME ;                       (* NAME: a sum index *)
    primary  = NUMBER
             | NAME
             | "sum" "(" NAME "=" SINT ".." SINT ";" expr ")"
             | "(" [ "-" ] NUMBER ("+" | "-") IMAG ")"  (* complex literal *)
             | "(" expr ")" ;
    NUMBER   = DIGITS [ "/" DIGITS ] [ "i" ] ;       (* no inner spaces *)
    IMAG     = NUMBER ending in "i" ;
    SINT     = [ "-" ] DIGITS ;

``3/2`` written without spaces is one rational literal; ``3 / 2`` is a
division.  Unary minus applied directly to a literal folds into a negative
constant, otherwise ``-t`` becomes ``0 - t``.  ``-2^2`` is ``-(2^2)``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError
from .exact import CRational, as_crational, format_value, parse_value


@dataclass(frozen=True)
class Const:
    value: CRational

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", as_crational(self.value))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub:
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul:
    left: Term
    right: Term


@dataclass(frozen=True)
class Div:
    left: Term
    right: Term


@dataclass(frozen=True)
class Pow:
    base: Term
    exponent: int | str

    def __post_init__(self) -> None:
        if isinstance(self.exponent, int) and self.exponent < 1:
            raise ValueError("exponent must be a positive integer")


@dataclass(frozen=True)
class Sum:
    index: str
    lower: int
    upper: int
    body: Term

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"empty sum range {self.lower}..{self.upper}")


Term = Union[Const, Var, Add, Sub, Mul, Div, Pow, Sum]
BINARY = (Add, Sub, Mul, Div)
_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def free_vars(t: Term, bound: frozenset[str] = frozenset()) -> set[str]:
    if isinstance(t, Const):
        return set()
    if isinstance(t, Var):
        return set() if t.name in bound else {t.name}
    if isinstance(t, BINARY):
        return free_vars(t.left, bound) | free_vars(t.right, bound)
    if isinstance(t, Pow):
        out = free_vars(t.base, bound)
        if isinstance(t.exponent, str) and t.exponent not in bound:
            out.add(t.exponent)
        return out
    return free_vars(t.body, bound | {t.index})


def node_kinds(t: Term) -> set[type]:
    kinds = {type(t)}
    if isinstance(t, BINARY):
        kinds |= node_kinds(t.left) | node_kinds(t.right)
    elif isinstance(t, Pow):
        kinds |= node_kinds(t.base)
    elif isinstance(t, Sum):
        kinds |= node_kinds(t.body)
    return kinds


# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------


def _const_text(v: CRational) -> str:
    text = format_value(v)
    if text.startswith("-") or (v.re and v.im):
        return f"({text})"
    return text


def pretty(t: Term) -> str:
    if isinstance(t, Const):
        return _const_text(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, BINARY):
        return f"({pretty(t.left)} {_SYMBOL[type(t)]} {pretty(t.right)})"
    if isinstance(t, Pow):
        base = pretty(t.base)
        if isinstance(t.base, Pow):
            base = f"({base})"
        return f"{base}^{t.exponent}"
    return f"sum({t.index}={t.lower}..{t.upper}; {pretty(t.body)})"


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<range>\.\.)
  | (?P<op>[-+*/^();=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, ("number", "name", "operator"))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        tok = self.tok
        self.i += 1
        return tok

    def fail(self, message: str, *expected: str):
        raise ParseError(message, self.tok.pos, expected)

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind not in ("op", "range"):
            self.fail(f"unexpected {self._describe()}", repr(text))
        return self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else f"token {self.tok.text!r}"

    def parse(self) -> Term:
        t = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self._describe()}", "'+'", "'-'", "'*'", "'/'", "end of input")
        return t

    def expr(self) -> Term:
        t = self.product()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.product()
            t = Add(t, rhs) if op == "+" else Sub(t, rhs)
        return t

    def product(self) -> Term:
        t = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            rhs = self.unary()
            t = Mul(t, rhs) if op == "*" else Div(t, rhs)
        return t

    def unary(self) -> Term:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Sub(Const(0), operand)
        return self.power()

    def power(self) -> Term:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            tok = self.tok
            if tok.kind == "num" and re.fullmatch(r"\d+", tok.text):
                self.advance()
                if int(tok.text) < 1:
                    raise ParseError("exponent must be at least 1", tok.pos, ("positive integer",))
                return Pow(base, int(tok.text))
            if tok.kind == "name":
                self.advance()
                return Pow(base, tok.text)
            self.fail(f"unexpected {self._describe()}", "positive integer", "index name")
        return base

    def _complex_literal(self) -> Term | None:
        # "(" ["-"] NUMBER ("+"|"-") IMAG ")"
        k = 1
        neg = self.peek(k).kind == "op" and self.peek(k).text == "-"
        if neg:
            k += 1
        re_tok, sign, im_tok, close = (self.peek(k + d) for d in range(4))
        if (
            re_tok.kind == "num" and not re_tok.text.endswith("i")
            and sign.kind == "op" and sign.text in "+-"
            and im_tok.kind == "num" and im_tok.text.endswith("i")
            and close.kind == "op" and close.text == ")"
        ):
            value = parse_value(f"{'-' if neg else ''}{re_tok.text}{sign.text}{im_tok.text}")
            self.i += k + 4
            return Const(value)
        return None

    def primary(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Const(parse_value(tok.text))
        if tok.kind == "name":
            if tok.text == "sum" and self.peek().text == "(":
                return self.sum_expr()
            self.advance()
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            literal = self._complex_literal()
            if literal is not None:
                return literal
            self.advance()
            t = self.expr()
            self.expect(")")
            return t
        self.fail(f"unexpected {self._describe()}", "number", "name", "'('", "'-'")

    def _signed_int(self) -> int:
        neg = False
        if self.tok.kind == "op" and self.tok.text == "-":
            neg = True
            self.advance()
        tok = self.tok
        if tok.kind != "num" or not tok.text.isdigit():
            self.fail(f"unexpected {self._describe()}", "integer")
        self.advance()
        return -int(tok.text) if neg else int(tok.text)

    def sum_expr(self) -> Term:
        self.advance()
        self.expect("(")
        if self.tok.kind != "name":
            self.fail(f"unexpected {self._describe()}", "index name")
        index = self.advance().text
        self.expect("=")
        lo_pos = self.tok.pos
        lower = self._signed_int()
        self.expect("..")
        upper = self._signed_int()
        if lower > upper:
            raise ParseError(f"empty sum range {lower}..{upper}", lo_pos, ("lower <= upper",))
        self.expect(";")
        body = self.expr()
        self.expect(")")
        return Sum(index, lower, upper, body)


def parse_term(text: str) -> Term:
    """Parse ``text`` into a term; raises :class:`ParseError` with the
    offending position and the set of expected tokens."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------

REAL_POOL = tuple(
    Fraction(v) for v in ("0", "1", "-1", "2", "-2", "1/2", "-1/2", "3/2", "-3", "5/3", "-7/4")
)
COMPLEX_EXTRA = (CRational(0, 1), CRational(1, -1), CRational(Fraction(-1, 2), 2))
NAT_POOL = (0, 1, 2, 3, 5)
INT_POOL = (0, 1, -1, 2, -2, 3, -5)

ALL_KINDS = ("const", "var", "add", "sub", "mul", "div", "pow", "sum")


def random_term(
    rng: random.Random,
    depth: int = 6,
    variables: tuple[str, ...] = ("x", "y"),
    kinds: tuple[str, ...] = ALL_KINDS,
    constants: tuple = REAL_POOL,
    _indices: tuple[str, ...] = (),
) -> Term:
    """Sample a term: node kinds uniform among ``kinds``, leaves forced at
    ``depth`` 1.  Exponents are 1..3 and sums run ``1..u`` with ``u <= 3``."""
    leaf_kinds = [k for k in kinds if k in ("const", "var")]
    choice = rng.choice(leaf_kinds if depth <= 1 else list(kinds))
    sub = depth - 1
    if choice == "const":
        return Const(rng.choice(constants))
    if choice == "var":
        names = variables + _indices
        return Var(rng.choice(names))
    if choice in ("add", "sub", "mul", "div"):
        cls = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[choice]
        return cls(
            random_term(rng, sub, variables, kinds, constants, _indices),
            random_term(rng, sub, variables, kinds, constants, _indices),
        )
    if choice == "pow":
        base = random_term(rng, sub, variables, kinds, constants, _indices)
        if _indices and rng.random() < 0.5:
            return Pow(base, rng.choice(_indices))
        return Pow(base, rng.randint(1, 3))
    index = f"k{len(_indices)}"
    lower = 1
    upper = rng.randint(1, 3)
    body = random_term(rng, sub, variables, kinds, constants, _indices + (index,))
    return Sum(index, lower, upper, body)
