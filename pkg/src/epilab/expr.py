"""Expression trees over pi and e, with certified interval evaluation.

The AST covers exactly what the coincidence registry needs: the two
constants, integer and rational literals, field operations, integer
powers, k-th roots, and exp.  ``parse`` accepts the matching text form:

    expr   :=  term  (('+' | '-') term)*
    term   :=  unary (('*' | '/') unary)*
    unary  :=  '-' unary | power
    power  :=  atom ('^' integer)*          # binds tightest
    atom   :=  integer | 'pi' | 'e' | '(' expr ')'
             | 'sqrt(' expr ')' | 'root(' k ',' expr ')' | 'exp(' expr ')'

'-' and '/' associate left.  Exponents may be negative ('^-2').  Tree
depth is capped at MAX_DEPTH both when parsing and when evaluating.

Evaluation is exact rational interval arithmetic: constants enter as
certified oracle enclosures, every operation is computed on interval
endpoints, and endpoints are rounded outward onto a decimal grid after
each node so denominators stay bounded.  If the interval comes out too
wide (or a comparison like "is the divisor nonzero" cannot be decided),
the whole tree is re-evaluated with doubled guard digits.  The result
interval always contains the true value; that containment is the
correctness claim everything downstream leans on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .bignum import BigFixed, iroot, root_interval
from .oracle import (
    EXP_ARG_LIMIT,
    ExpRangeError,
    e_interval,
    exp_interval,
    pi_interval,
)

__all__ = [
    "Expr",
    "ConstPi",
    "ConstE",
    "IntLit",
    "RatLit",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "PowInt",
    "Root",
    "Exp",
    "Sqrt",
    "parse",
    "to_text",
    "depth",
    "eval_expr",
    "eval_interval",
    "EvalResult",
    "ParseError",
    "EvalDomainError",
    "PrecisionCapError",
    "MAX_DEPTH",
]

MAX_DEPTH = 64


class ParseError(ValueError):
    """Malformed expression text."""


class EvalDomainError(ValueError):
    """The expression is undefined (division by zero, root of a negative)."""


class PrecisionCapError(ArithmeticError):
    """Raising precision up to the cap did not settle the result."""


class _Undecided(Exception):
    # internal: the interval is too wide to decide a predicate; retry
    # with more precision
    pass


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class ConstPi(Expr):
    pass


@dataclass(frozen=True)
class ConstE(Expr):
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class RatLit(Expr):
    value: Fraction


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Root(Expr):
    arg: Expr
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("root index must be >= 1")


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


def Sqrt(arg: Expr) -> Root:
    """Sugar: Sqrt(x) is Root(x, 2)."""
    return Root(arg, 2)


def to_text(expr: Expr) -> str:
    """Render an AST in the grammar above; parse(to_text(x)) evaluates
    equal to x.  Parentheses appear only where precedence needs them."""
    return _render(expr, 1)


def _render(expr: Expr, ctx: int) -> str:
    # precedence: + - are 1, * / are 2, ^ is 3, atoms 4
    if isinstance(expr, ConstPi):
        return "pi"
    if isinstance(expr, ConstE):
        return "e"
    if isinstance(expr, IntLit):
        s = str(expr.value)
        return f"({s})" if expr.value < 0 else s
    if isinstance(expr, RatLit):
        v = expr.value
        if v.denominator == 1:
            return _render(IntLit(v.numerator), ctx)
        if v.numerator < 0:
            return f"(0 - {-v.numerator}/{v.denominator})"
        s = f"{v.numerator}/{v.denominator}"
        return f"({s})" if ctx > 2 else s
    if isinstance(expr, (Add, Sub)):
        op = "+" if isinstance(expr, Add) else "-"
        s = f"{_render(expr.left, 1)} {op} {_render(expr.right, 2)}"
        return f"({s})" if ctx > 1 else s
    if isinstance(expr, (Mul, Div)):
        op = "*" if isinstance(expr, Mul) else "/"
        s = f"{_render(expr.left, 2)}{op}{_render(expr.right, 3)}"
        return f"({s})" if ctx > 2 else s
    if isinstance(expr, PowInt):
        return f"{_render(expr.base, 4)}^{expr.exponent}"
    if isinstance(expr, Root):
        if expr.k == 2:
            return f"sqrt({_render(expr.arg, 1)})"
        return f"root({expr.k}, {_render(expr.arg, 1)})"
    if isinstance(expr, Exp):
        return f"exp({_render(expr.arg, 1)})"
    raise TypeError(f"not an Expr: {expr!r}")


def depth(expr: Expr) -> int:
    if isinstance(expr, (ConstPi, ConstE, IntLit, RatLit)):
        return 1
    if isinstance(expr, (Add, Sub, Mul, Div)):
        return 1 + max(depth(expr.left), depth(expr.right))
    if isinstance(expr, (PowInt,)):
        return 1 + depth(expr.base)
    if isinstance(expr, (Root, Exp)):
        return 1 + depth(expr.arg)
    raise TypeError(f"not an Expr: {expr!r}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(\d+|[a-z]+|[()+\-*/^,])")
_WORDS = {"pi", "e", "sqrt", "root", "exp"}


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"bad character at position {pos}: {text[pos:pos+10]!r}")
            break
        tok = m.group(1)
        if tok.isalpha() and tok not in _WORDS:
            raise ParseError(f"unknown name {tok!r}")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    # each AST level costs at most five grammar-rule frames, so this
    # recursion ceiling never rejects a tree the depth invariant allows
    _RECURSION_LIMIT = 5 * MAX_DEPTH + 16

    def _guard(self, d: int) -> int:
        if d > self._RECURSION_LIMIT:
            raise ParseError(f"expression deeper than {MAX_DEPTH}")
        return d

    def parse_expr(self, d: int = 1) -> Expr:
        self._guard(d)
        node = self.parse_term(d + 1)
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.parse_term(d + 1)
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_term(self, d: int) -> Expr:
        self._guard(d)
        node = self.parse_unary(d + 1)
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.parse_unary(d + 1)
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def parse_unary(self, d: int) -> Expr:
        self._guard(d)
        if self.peek() == "-":
            self.next()
            return Sub(IntLit(0), self.parse_unary(d + 1))
        return self.parse_power(d + 1)

    def parse_power(self, d: int) -> Expr:
        self._guard(d)
        node = self.parse_atom(d + 1)
        while self.peek() == "^":
            self.next()
            node = PowInt(node, self.parse_int())
        return node

    def parse_int(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.next()
            sign = -1
        tok = self.next()
        if not tok.isdigit():
            raise ParseError(f"expected integer, got {tok!r}")
        return sign * int(tok)

    def parse_atom(self, d: int) -> Expr:
        self._guard(d)
        tok = self.next()
        if tok.isdigit():
            return IntLit(int(tok))
        if tok == "pi":
            return ConstPi()
        if tok == "e":
            return ConstE()
        if tok == "(":
            node = self.parse_expr(d + 1)
            self.expect(")")
            return node
        if tok in ("sqrt", "exp"):
            self.expect("(")
            arg = self.parse_expr(d + 1)
            self.expect(")")
            return Sqrt(arg) if tok == "sqrt" else Exp(arg)
        if tok == "root":
            self.expect("(")
            k = self.parse_int()
            if k < 1:
                raise ParseError("root index must be >= 1")
            self.expect(",")
            arg = self.parse_expr(d + 1)
            self.expect(")")
            return Root(arg, k)
        raise ParseError(f"unexpected token {tok!r}")


def parse(text: str) -> Expr:
    """Parse expression text into an AST; raises ParseError on bad input."""
    parser = _Parser(_tokenize(text))
    if parser.peek() is None:
        raise ParseError("empty expression")
    node = parser.parse_expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at token {parser.pos}: {parser.peek()!r}")
    if depth(node) > MAX_DEPTH:
        raise ParseError(f"expression deeper than {MAX_DEPTH}")
    return node


# ---------------------------------------------------------------------------
# interval evaluation

_IV = tuple[Fraction, Fraction]


def _floor_grid(x: Fraction, scale: int) -> Fraction:
    p = 10**scale
    return Fraction((x.numerator * p) // x.denominator, p)


def _ceil_grid(x: Fraction, scale: int) -> Fraction:
    p = 10**scale
    return Fraction(-((-x.numerator * p) // x.denominator), p)


def _out(lo: Fraction, hi: Fraction, w: int) -> _IV:
    if lo == hi:
        # exact subtree (rational literals and arithmetic on them); keep
        # it exact so downstream consumers can detect true rationals
        return lo, hi
    return _floor_grid(lo, w), _ceil_grid(hi, w)


def _iv_mul(a: _IV, b: _IV) -> _IV:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


def _iv_recip(a: _IV) -> _IV:
    lo, hi = a
    if lo <= 0 <= hi:
        if lo == hi == 0:
            raise EvalDomainError("division by zero")
        raise _Undecided
    return 1 / hi, 1 / lo


def _iv_pow(a: _IV, k: int) -> _IV:
    if k == 0:
        return Fraction(1), Fraction(1)
    if k < 0:
        return _iv_pow(_iv_recip(a), -k)
    lo, hi = a
    if lo >= 0:
        return lo**k, hi**k
    if hi <= 0:
        return (lo**k, hi**k) if k % 2 else (hi**k, lo**k)
    # straddles zero
    if k % 2:
        return lo**k, hi**k
    return Fraction(0), max(lo**k, hi**k)


def _eval(expr: Expr, w: int) -> _IV:
    if isinstance(expr, ConstPi):
        return _out(*pi_interval(w), w)
    if isinstance(expr, ConstE):
        return _out(*e_interval(w), w)
    if isinstance(expr, IntLit):
        v = Fraction(expr.value)
        return v, v
    if isinstance(expr, RatLit):
        v = Fraction(expr.value)
        return v, v
    if isinstance(expr, Add):
        a, b = _eval(expr.left, w), _eval(expr.right, w)
        return _out(a[0] + b[0], a[1] + b[1], w)
    if isinstance(expr, Sub):
        a, b = _eval(expr.left, w), _eval(expr.right, w)
        return _out(a[0] - b[1], a[1] - b[0], w)
    if isinstance(expr, Mul):
        a, b = _eval(expr.left, w), _eval(expr.right, w)
        return _out(*_iv_mul(a, b), w)
    if isinstance(expr, Div):
        a, b = _eval(expr.left, w), _eval(expr.right, w)
        return _out(*_iv_mul(a, _iv_recip(b)), w)
    if isinstance(expr, PowInt):
        a = _eval(expr.base, w)
        return _out(*_iv_pow(a, expr.exponent), w)
    if isinstance(expr, Root):
        lo, hi = _eval(expr.arg, w)
        if hi < 0:
            raise EvalDomainError(f"root of a negative value (<= {float(hi):g})")
        if lo < 0:
            # might be a genuinely negative value seen too coarsely, or a
            # tiny true value straddled by the interval; retry either way
            raise _Undecided
        if lo == hi:
            # exact argument: keep a perfect k-th power exact
            p = iroot(lo.numerator, expr.k)
            q = iroot(lo.denominator, expr.k)
            if p**expr.k == lo.numerator and q**expr.k == lo.denominator:
                return Fraction(p, q), Fraction(p, q)
        return root_interval(lo, hi, expr.k, w)
    if isinstance(expr, Exp):
        lo, hi = _eval(expr.arg, w)
        if lo > EXP_ARG_LIMIT or hi < -EXP_ARG_LIMIT:
            raise ExpRangeError(f"exp argument outside |x| <= {EXP_ARG_LIMIT}")
        if hi > EXP_ARG_LIMIT or lo < -EXP_ARG_LIMIT:
            raise _Undecided
        e_lo = exp_interval(lo, w)[0]
        e_hi = exp_interval(hi, w)[1]
        return e_lo, e_hi
    raise TypeError(f"not an Expr: {expr!r}")


class EvalResult(NamedTuple):
    value: BigFixed
    error_bound: BigFixed


def eval_interval(expr: Expr, digits: int, *, max_attempts: int = 8) -> _IV:
    """Certified enclosure of the expression, width <= 10**-digits.

    The true value always lies in [lo, hi].  Guard digits double on each
    retry; PrecisionCapError signals that the cap was reached (for
    example when a subexpression is exactly zero where a nonzero value
    is needed).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if depth(expr) > MAX_DEPTH:
        raise ValueError(f"expression deeper than {MAX_DEPTH}")
    target = Fraction(1, 10**digits)
    guard = 10
    for _ in range(max_attempts):
        try:
            lo, hi = _eval(expr, digits + guard)
        except _Undecided:
            guard *= 2
            continue
        if hi - lo <= target:
            return lo, hi
        guard *= 2
    raise PrecisionCapError(
        f"interval did not narrow to 10^-{digits} within {max_attempts} attempts"
    )


def eval_expr(expr: Expr, digits: int) -> EvalResult:
    """Evaluate with a certified error bound: |value - exact| <= error_bound
    <= 10**-digits."""
    lo, hi = eval_interval(expr, digits + 1)
    value = BigFixed.from_fraction((lo + hi) / 2, digits + 2)
    err = (hi - lo) / 2 + abs(value.as_fraction() - (lo + hi) / 2)
    return EvalResult(value, BigFixed.from_fraction(_ceil_grid(err, digits + 6), digits + 6))
