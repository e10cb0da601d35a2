"""Parsing and evaluation of forcing functions given as text, e.g. ``"5*cos(t^2)*exp(-t)"``.

The grammar has one free variable ``t``, the constants ``pi`` and ``e``, the
functions sin, cos, tan, exp, log, sqrt and abs, and the operators ``+ - * / ^``
with conventional precedence (``^`` binds tightest and associates right,
unary minus sits between ``* /`` and ``^``).  Implicit multiplication is
rejected; ``5cos(t)`` must be written ``5*cos(t)``.

Parsed expressions are immutable trees; evaluation is pure, accepts scalars or
numpy arrays for ``t``, and reports domain violations (log of a non-positive
number, square root of a negative, division by zero, fractional power of a
negative base) naming the offending sub-expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "ExpressionError",
    "LexicalError",
    "ParseError",
    "EvaluationError",
    "Token",
    "tokenize",
    "parse",
    "parse_expression",
    "evaluate",
    "to_string",
    "Constant",
    "TimeVar",
    "Negate",
    "BinaryOp",
    "Call",
    "FUNCTIONS",
]


class ExpressionError(ValueError):
    """Base class for all expression failures; carries a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


class LexicalError(ExpressionError):
    """A character outside the grammar."""


class ParseError(ExpressionError):
    """Structurally invalid token stream."""


class EvaluationError(ValueError):
    """Domain violation during evaluation; names the offending sub-expression."""

    def __init__(self, message: str, subexpr: "Expression"):
        super().__init__(f"{message} in '{to_string(subexpr)}'")
        self.subexpr = subexpr


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

NUMBER = "number"
IDENT = "identifier"
OPERATOR = "operator"
LPAREN = "left-paren"
RPAREN = "right-paren"
COMMA = "comma"

_OPERATOR_CHARS = "+-*/^"


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens, in order, skipping whitespace.

    Numbers take integer or decimal form ('12', '3.5', '.5'); identifiers are
    ASCII letter runs.  Any other non-whitespace character raises
    :class:`LexicalError` with its offset.
    """
    tokens: list[Token] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c in _OPERATOR_CHARS:
            tokens.append(Token(OPERATOR, c, i))
            i += 1
        elif c == "(":
            tokens.append(Token(LPAREN, c, i))
            i += 1
        elif c == ")":
            tokens.append(Token(RPAREN, c, i))
            i += 1
        elif c == ",":
            tokens.append(Token(COMMA, c, i))
            i += 1
        elif c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            seen_dot = False
            while i < n and (source[i].isdigit() or (source[i] == "." and not seen_dot)):
                if source[i] == ".":
                    seen_dot = True
                i += 1
            tokens.append(Token(NUMBER, source[start:i], start))
        elif c.isascii() and c.isalpha():
            start = i
            while i < n and source[i].isascii() and source[i].isalpha():
                i += 1
            tokens.append(Token(IDENT, source[start:i], start))
        else:
            raise LexicalError(f"unexpected character {c!r}", i)
    return tokens


# ---------------------------------------------------------------------------
# syntax tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class TimeVar:
    pass


@dataclass(frozen=True)
class Negate:
    child: "Expression"


@dataclass(frozen=True)
class BinaryOp:
    op: str  # one of + - * / ^
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expression"


Expression = Union[Constant, TimeVar, Negate, BinaryOp, Call]

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")
_CONSTANTS = {"pi": math.pi, "e": math.e}


class _Parser:
    """Recursive descent over the token list.

    Grammar (low to high precedence):
        sum     := product (('+'|'-') product)*
        product := unary (('*'|'/') unary)*
        unary   := '-' unary | power
        power   := atom ('^' unary)?          # right-associative
        atom    := number | 't' | 'pi' | 'e' | func '(' sum ')' | '(' sum ')'
    """

    def __init__(self, tokens: list[Token], source_len: int):
        self.tokens = tokens
        self.pos = 0
        self.end = source_len

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.lexeme!r}", tok.position)

    def parse_sum(self) -> Expression:
        node = self.parse_product()
        while (tok := self.peek()) is not None and tok.kind == OPERATOR and tok.lexeme in "+-":
            self.advance()
            rhs = self.parse_product()
            node = BinaryOp(tok.lexeme, node, rhs)
        return node

    def parse_product(self) -> Expression:
        node = self.parse_unary()
        while (tok := self.peek()) is not None and tok.kind == OPERATOR and tok.lexeme in "*/":
            self.advance()
            rhs = self.parse_unary()
            node = BinaryOp(tok.lexeme, node, rhs)
        return node

    def parse_unary(self) -> Expression:
        tok = self.peek()
        if tok is not None and tok.kind == OPERATOR and tok.lexeme == "-":
            self.advance()
            return Negate(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Expression:
        base = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok.kind == OPERATOR and tok.lexeme == "^":
            self.advance()
            # exponent may itself carry a unary minus: 2^-3
            exponent = self.parse_unary()
            return BinaryOp("^", base, exponent)
        return base

    def parse_atom(self) -> Expression:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.end)
        if tok.kind == NUMBER:
            self.advance()
            return Constant(float(tok.lexeme))
        if tok.kind == LPAREN:
            self.advance()
            inner = self.parse_sum()
            closing = self.peek()
            if closing is None or closing.kind != RPAREN:
                raise ParseError("unbalanced parenthesis", tok.position)
            self.advance()
            return inner
        if tok.kind == IDENT:
            self.advance()
            name = tok.lexeme
            follows_paren = (nxt := self.peek()) is not None and nxt.kind == LPAREN
            if name in FUNCTIONS:
                if not follows_paren:
                    raise ParseError(f"function {name!r} requires an argument list", tok.position)
                self.advance()  # consume '('
                arg = self.parse_sum()
                nxt = self.peek()
                if nxt is not None and nxt.kind == COMMA:
                    raise ParseError(f"function {name!r} takes exactly one argument", nxt.position)
                if nxt is None or nxt.kind != RPAREN:
                    raise ParseError("unbalanced parenthesis", tok.position)
                self.advance()
                return Call(name, arg)
            if follows_paren:
                raise ParseError(f"unknown function {name!r}", tok.position)
            if name == "t":
                return TimeVar()
            if name in _CONSTANTS:
                return Constant(_CONSTANTS[name])
            raise ParseError(f"unknown identifier {name!r}", tok.position)
        raise ParseError(f"unexpected {tok.lexeme!r}", tok.position)


def parse(tokens: list[Token], source_len: int | None = None) -> Expression:
    """Build an Expression from a token list produced by :func:`tokenize`."""
    if source_len is None:
        source_len = tokens[-1].position + len(tokens[-1].lexeme) if tokens else 0
    if not tokens:
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens, source_len)
    tree = parser.parse_sum()
    parser.expect_done()
    return tree


def parse_expression(source: str) -> Expression:
    """Tokenize and parse in one step."""
    return parse(tokenize(source), len(source))


# ---------------------------------------------------------------------------
# evaluation and printing
# ---------------------------------------------------------------------------


def _check(cond, message: str, node: Expression) -> None:
    if not np.all(cond):
        raise EvaluationError(message, node)


def evaluate(expr: Expression, t):
    """Evaluate with the free variable bound to ``t`` (scalar or ndarray)."""
    arr = np.asarray(t, dtype=float)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        value = _eval(expr, arr)
    if arr.ndim == 0:
        return float(value)
    out = np.asarray(value, dtype=float)
    if out.shape != arr.shape:
        out = np.broadcast_to(out, arr.shape).copy()
    return out


def _eval(expr: Expression, t: np.ndarray):
    if isinstance(expr, Constant):
        return expr.value
    if isinstance(expr, TimeVar):
        return t
    if isinstance(expr, Negate):
        return -_eval(expr.child, t)
    if isinstance(expr, BinaryOp):
        left = _eval(expr.left, t)
        right = _eval(expr.right, t)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        if expr.op == "/":
            _check(np.asarray(right) != 0.0, "division by zero", expr)
            return left / right
        # power
        base = np.asarray(left, dtype=float)
        expo = np.asarray(right, dtype=float)
        fractional = expo != np.floor(expo)
        _check(~((base < 0.0) & fractional), "fractional power of negative base", expr)
        _check(~((base == 0.0) & (expo < 0.0)), "zero raised to a negative power", expr)
        return base ** expo
    if isinstance(expr, Call):
        arg = np.asarray(_eval(expr.arg, t), dtype=float)
        if expr.func == "sin":
            return np.sin(arg)
        if expr.func == "cos":
            return np.cos(arg)
        if expr.func == "tan":
            return np.tan(arg)
        if expr.func == "exp":
            return np.exp(arg)
        if expr.func == "log":
            _check(arg > 0.0, "log of a non-positive number", expr)
            return np.log(arg)
        if expr.func == "sqrt":
            _check(arg >= 0.0, "square root of a negative number", expr)
            return np.sqrt(arg)
        if expr.func == "abs":
            return np.abs(arg)
    raise TypeError(f"not an Expression node: {expr!r}")


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_string(expr: Expression) -> str:
    """Render a tree back to grammar-conforming text (parse . to_string = id)."""
    return _render(expr, 0)


def _render(expr: Expression, parent_prec: int) -> str:
    if isinstance(expr, Constant):
        if expr.value == math.pi:
            return "pi"
        if expr.value == math.e:
            return "e"
        neg = expr.value < 0
        text = repr(abs(expr.value))
        if "e" in text:  # exponent notation is outside the grammar
            mantissa, _, expo = text.partition("e")
            text = f"{mantissa}*10^{expo.lstrip('+')}" if not expo.startswith("-") \
                else f"{mantissa}*10^-{expo[1:]}"
            if neg:
                return f"(-({text}))" if parent_prec > 0 else f"-({text})"
            return f"({text})" if parent_prec >= _PREC['*'] else text
        if neg:
            return f"(-{text})" if parent_prec > 0 else f"-{text}"
        return text
    if isinstance(expr, TimeVar):
        return "t"
    if isinstance(expr, Negate):
        inner = _render(expr.child, _PREC["neg"])
        text = f"-{inner}"
        return f"({text})" if parent_prec > _PREC["neg"] else text
    if isinstance(expr, BinaryOp):
        prec = _PREC[expr.op]
        # '^' associates right: its left operand needs parens at equal
        # precedence; the left-associative operators need them on the right.
        left = _render(expr.left, prec + 1 if expr.op == "^" else prec)
        right = _render(expr.right, prec if expr.op == "^" else prec + 1)
        text = f"{left}{expr.op}{right}"
        return f"({text})" if parent_prec > prec else text
    if isinstance(expr, Call):
        return f"{expr.func}({_render(expr.arg, 0)})"
    raise TypeError(f"not an Expression node: {expr!r}")
