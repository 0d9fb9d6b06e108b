"""Arithmetic expressions over the exact reals.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``*`` and ``/``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' natural ['^' natural ...]]     (right-associative)
    atom   := number | 'pi' | ident '(' expr ')' | '(' expr ')'
    number := digits ['.' digits]

``p/q`` with integer literals is an ordinary division; literals and their
arithmetic are folded to exact rationals before any real is built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .approx import qdlog2
from .completion import (
    Real,
    real_add,
    real_from_rational,
    real_inv,
    real_mul,
    real_neg,
    real_pow,
    real_sub,
    real_to_decimal,
)
from .elementary import arctan, exp, machin_pi, sqrt
from .errors import DomainError

__all__ = [
    "ParseError",
    "EvalError",
    "Num",
    "Const",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "parse",
    "show",
    "compile_expr",
    "evaluate",
    "mp_evaluate",
    "FUNCTIONS",
]

FUNCTIONS = ("exp", "arctan", "sqrt")
CONSTANTS = ("pi",)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}")
        self.pos = pos


class EvalError(DomainError):
    def __init__(self, message: str, pos: int | None = None):
        where = f" (at column {pos + 1})" if pos is not None else ""
        super().__init__(message + where)
        self.pos = pos


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    text: str
    pos: int = 0


@dataclass(frozen=True)
class Const:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: int = 0


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"
    pos: int = 0


Expr = Union[Num, Const, Neg, BinOp, Pow, Call]

_OP_NAMES = {"+": "add", "-": "sub", "*": "mul", "/": "div"}


def show(e: Expr) -> str:
    """Compact prefix rendering, e.g. ``add(1, mul(2, 3))``."""
    if isinstance(e, Num):
        return e.text
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Neg):
        return f"neg({show(e.arg)})"
    if isinstance(e, BinOp):
        return f"{_OP_NAMES[e.op]}({show(e.left)}, {show(e.right)})"
    if isinstance(e, Pow):
        return f"pow({show(e.base)}, {e.exponent})"
    return f"{e.func}({show(e.arg)})"


# -- tokenizer and parser ------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", i)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    toks.append(_Tok("eof", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> _Tok | None:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> _Tok:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.pos)
        return t

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            e = BinOp(t.text, e, self.term(), t.pos)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.advance()
            e = BinOp(t.text, e, self.unary(), t.pos)
        return e

    def unary(self) -> Expr:
        t = self.accept("-")
        if t is not None:
            return Neg(self.unary(), t.pos)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        t = self.accept("^")
        if t is None:
            return base
        return Pow(base, self.exponent(), t.pos)

    def exponent(self) -> int:
        t = self.tok
        if t.kind != "num" or "." in t.text:
            raise ParseError("exponent must be a natural number", t.pos)
        self.advance()
        n = int(t.text)
        if self.accept("^") is not None:
            n = n ** self.exponent()
        return n

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(Fraction(t.text), t.text, t.pos)
        if t.kind == "ident":
            self.advance()
            if t.text in CONSTANTS:
                return Const(t.text, t.pos)
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg, t.pos)
            raise ParseError(f"unknown identifier {t.text!r}", t.pos)
        if self.accept("(") is not None:
            e = self.expr()
            self.expect(")")
            return e
        found = t.text or "end of input"
        raise ParseError(f"expected a number, 'pi', a function or '(', found {found!r}", t.pos)


def parse(src: str) -> Expr:
    return _Parser(src).parse()


# -- exact folding and witnesses -----------------------------------------------


def constant_value(e: Expr) -> Fraction | None:
    """Exact value of a subtree made only of literals, else None."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Neg):
        v = constant_value(e.arg)
        return None if v is None else -v
    if isinstance(e, Pow):
        v = constant_value(e.base)
        return None if v is None else v**e.exponent
    if isinstance(e, BinOp):
        a, b = constant_value(e.left), constant_value(e.right)
        if a is None or b is None:
            return None
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0:
            raise EvalError("division by zero", e.pos)
        return a / b
    return None


def positive_witness(e: Expr) -> int | None:
    """``w`` with ``2**w <= value(e)`` read off the expression's structure."""
    q = constant_value(e)
    if q is not None:
        return qdlog2(q) if q > 0 else None
    if isinstance(e, Const):
        return 1  # 2 <= pi
    if isinstance(e, BinOp) and e.op in "+*":
        a, b = positive_witness(e.left), positive_witness(e.right)
        if a is None or b is None:
            return None
        return max(a, b) if e.op == "+" else a + b
    if isinstance(e, Pow):
        w = positive_witness(e.base)
        return None if w is None else w * e.exponent
    if isinstance(e, Call) and e.func == "sqrt":
        w = positive_witness(e.arg)
        return None if w is None else w // 2
    if isinstance(e, Call) and e.func == "exp":
        aq = constant_value(e.arg)
        # exp(x) >= 1 once x >= 0
        if (aq is not None and aq >= 0) or positive_witness(e.arg) is not None:
            return 0
    return None


def apartness_witness(e: Expr) -> int | None:
    """``w`` with ``2**w <= |value(e)|``, if derivable."""
    q = constant_value(e)
    if q is not None:
        return qdlog2(abs(q)) if q != 0 else None
    w = positive_witness(e)
    if w is None and isinstance(e, Neg):
        w = positive_witness(e.arg)
    return w


# -- compilation to reals ------------------------------------------------------


def _located(x: Real, pos: int) -> Real:
    def approx(k):
        try:
            return x.at(k)
        except EvalError:
            raise
        except DomainError as err:
            raise EvalError(str(err), pos) from err

    return Real(approx)


class _Compiler:
    def __init__(self, witness: int | None):
        self.witness = witness
        self.pi = None

    def need_witness(self, what: str, derived: int | None, pos: int) -> int:
        if derived is not None:
            return derived
        if self.witness is not None:
            return self.witness
        raise EvalError(
            f"{what} needs a lower bound 2^K <= |operand| that cannot be derived "
            f"from the expression; pass --witness K to assert one",
            pos,
        )

    def __call__(self, e: Expr) -> Real:
        q = constant_value(e)
        if q is not None:
            return real_from_rational(q)
        if isinstance(e, Const):
            if self.pi is None:
                self.pi = machin_pi()
            return self.pi
        if isinstance(e, Neg):
            return real_neg(self(e.arg))
        if isinstance(e, Pow):
            return real_pow(self(e.base), e.exponent)
        if isinstance(e, BinOp):
            left = self(e.left)
            if e.op == "/":
                if constant_value(e.right) == 0:
                    raise EvalError("division by zero", e.pos)
                w = self.need_witness("division", apartness_witness(e.right), e.pos)
                return real_mul(left, _located(real_inv(self(e.right), w), e.pos))
            right = self(e.right)
            if e.op == "+":
                return real_add(left, right)
            if e.op == "-":
                return real_sub(left, right)
            return real_mul(left, right)
        arg = self(e.arg)
        if e.func == "exp":
            return exp(arg)
        if e.func == "arctan":
            return arctan(arg)
        aq = constant_value(e.arg)
        if aq is not None and aq < 0:
            raise EvalError("sqrt of a negative number", e.pos)
        if aq == 0:
            return real_from_rational(0)
        w = self.need_witness("sqrt", positive_witness(e.arg), e.pos)
        return _located(sqrt(arg, w), e.pos)


def compile_expr(e: Expr, witness: int | None = None) -> Real:
    """Build the real denoted by ``e``.

    Each compilation gets its own pi, so timings and caches do not leak
    between evaluations.
    """
    return _Compiler(witness)(e)


def evaluate(src: str | Expr, digits: int, witness: int | None = None) -> str:
    """Decimal string with ``digits`` places within ``10**-digits`` of the value."""
    e = parse(src) if isinstance(src, str) else src
    return real_to_decimal(compile_expr(e, witness), digits)


# -- independent floating-point oracle -----------------------------------------


def mp_evaluate(e: Expr, digits: int, guard: int = 30):
    """Evaluate with mpmath at ``digits + guard`` significant decimals.

    Shares nothing with the exact machinery; used to cross-check results.
    """
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.dps = digits + guard

    def go(n):
        if isinstance(n, Num):
            return ctx.mpf(n.value.numerator) / n.value.denominator
        if isinstance(n, Const):
            return +ctx.pi
        if isinstance(n, Neg):
            return -go(n.arg)
        if isinstance(n, Pow):
            return go(n.base) ** n.exponent
        if isinstance(n, BinOp):
            a, b = go(n.left), go(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            return a * b if n.op == "*" else a / b
        f = {"exp": ctx.exp, "arctan": ctx.atan, "sqrt": ctx.sqrt}[n.func]
        return f(go(n.arg))

    # integer part digits eat into the significant-digit budget
    value = go(e)
    if value != 0:
        ctx.dps += max(0, int(ctx.log10(abs(value))) + 1)
        value = go(e)
    return value, ctx


def agrees_with_oracle(candidate: str, e: Expr, digits: int) -> bool:
    """``|candidate - value| <= 10**-digits``, judged against :func:`mp_evaluate`.

    The oracle's own error is far below the slack of one part in ``10**10``
    of the last place allowed here.
    """
    value, ctx = mp_evaluate(e, digits)
    ctx.dps += 10
    diff = abs(ctx.mpf(candidate) - value)
    return diff <= ctx.mpf(10) ** (-digits) * (1 + ctx.mpf(10) ** -10)
