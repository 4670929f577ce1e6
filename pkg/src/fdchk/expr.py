"""A small, total expression language for coefficient fields and weights.

Grammar (standard precedence, ``^`` right-associative and binding tighter
than unary minus)::

    expression := term { ("+" | "-") term }
    term       := factor { ("*" | "/") factor }
    factor     := "-" factor | power
    power      := atom [ "^" factor ]
    atom       := number | "pi" | "e" | variable | name "(" args ")" | "(" expression ")"

Variables are ``x1 x2 x3 s``; functions are ``sin cos exp log sqrt abs
atan`` (unary) and ``min max`` (binary).  Parsed trees are immutable and
safe to share across threads; evaluation is deterministic and accepts
either scalars or numpy arrays as bindings.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import EvalError, ParseError, UnboundVariable

__all__ = [
    "Expr", "Num", "Const", "Var", "Neg", "Bin", "Call",
    "parse", "to_string", "evaluate", "free_variables",
]

VARIABLES = ("x1", "x2", "x3", "s")
CONSTANTS = {"pi": math.pi, "e": math.e}
UNARY_FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs", "atan")
BINARY_FUNCTIONS = ("min", "max")

MAX_INPUT_BYTES = 64 * 1024


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


Expr = Union[Num, Const, Var, Neg, Bin, Call]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            # trailing whitespace is fine; anything else is an error
            rest = text[pos:]
            if rest.strip() == "":
                break
            raise ParseError(pos + len(rest) - len(rest.lstrip()), "a token")
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(pos, f"'{op}'")
        return self.advance()

    def parse_expression(self) -> Expr:
        node = self.parse_term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = Bin(text, node, self.parse_term())
            else:
                return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = Bin(text, node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> Expr:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.parse_factor())
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return Bin("^", base, self.parse_factor())
        return base

    def parse_atom(self) -> Expr:
        kind, text, pos = self.advance()
        if kind == "num":
            return Num(float(text))
        if kind == "name":
            if text in CONSTANTS:
                return Const(text)
            if text in VARIABLES:
                return Var(text)
            if text in UNARY_FUNCTIONS or text in BINARY_FUNCTIONS:
                self.expect_op("(")
                args = [self.parse_expression()]
                if text in BINARY_FUNCTIONS:
                    self.expect_op(",")
                    args.append(self.parse_expression())
                self.expect_op(")")
                return Call(text, tuple(args))
            raise ParseError(pos, "a known variable, constant or function")
        if kind == "op" and text == "(":
            node = self.parse_expression()
            self.expect_op(")")
            return node
        raise ParseError(pos, "a number, name or '('")


def parse(text: str) -> Expr:
    """Parse expression text into an immutable AST.

    Raises ParseError carrying the byte offset of the first bad token.
    """
    if len(text.encode("utf-8")) > MAX_INPUT_BYTES:
        raise ParseError(MAX_INPUT_BYTES, "input shorter than 64 KiB")
    p = _Parser(text)
    node = p.parse_expression()
    kind, _, pos = p.peek()
    if kind != "end":
        raise ParseError(pos, "end of input")
    return node


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 2, "^": 3, "atom": 4}


def _prec(e: Expr) -> int:
    if isinstance(e, Bin):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    return _PREC["atom"]


def to_string(e: Expr) -> str:
    """Print an AST; parse(to_string(e)) is structurally equal to e."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = to_string(e.operand)
        if _prec(e.operand) <= _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(to_string(a) for a in e.args)})"
    if isinstance(e, Bin):
        left = to_string(e.left)
        right = to_string(e.right)
        p = _PREC[e.op]
        # + - * / are left-associative, '^' is right-associative
        if e.op == "^":
            if _prec(e.left) <= p:
                left = f"({left})"
            if _prec(e.right) < p:
                right = f"({right})"
        else:
            if _prec(e.left) < p:
                left = f"({left})"
            if _prec(e.right) <= p:
                right = f"({right})"
        return f"{left} {e.op} {right}" if e.op in "+-" else f"{left}{e.op}{right}"
    raise TypeError(f"not an Expr: {e!r}")


def free_variables(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Neg):
        return free_variables(e.operand)
    if isinstance(e, Bin):
        return free_variables(e.left) | free_variables(e.right)
    if isinstance(e, Call):
        out = set()
        for a in e.args:
            out |= free_variables(a)
        return out
    return set()


def _check_domain(cond, message: str):
    if np.any(cond):
        raise EvalError(message)


def _eval(e: Expr, bindings: Mapping[str, object]):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Var):
        try:
            return bindings[e.name]
        except KeyError:
            raise UnboundVariable(f"variable '{e.name}' is not bound") from None
    if isinstance(e, Neg):
        return -_eval(e.operand, bindings)
    if isinstance(e, Call):
        a = _eval(e.args[0], bindings)
        if e.func == "sin":
            return np.sin(a)
        if e.func == "cos":
            return np.cos(a)
        if e.func == "exp":
            return np.exp(a)
        if e.func == "log":
            _check_domain(np.asarray(a) <= 0, "log of a non-positive argument")
            return np.log(a)
        if e.func == "sqrt":
            _check_domain(np.asarray(a) < 0, "sqrt of a negative argument")
            return np.sqrt(a)
        if e.func == "abs":
            return np.abs(a)
        if e.func == "atan":
            return np.arctan(a)
        b = _eval(e.args[1], bindings)
        if e.func == "min":
            return np.minimum(a, b)
        return np.maximum(a, b)
    if isinstance(e, Bin):
        left = _eval(e.left, bindings)
        right = _eval(e.right, bindings)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if e.op == "/":
            _check_domain(np.asarray(right) == 0, "division by zero")
            return left / right
        # power: keep evaluation inside the reals
        base = np.asarray(left, dtype=float)
        expo = np.asarray(right, dtype=float)
        frac = expo != np.floor(expo)
        _check_domain((base < 0) & frac, "fractional power of a negative base")
        _check_domain((base == 0) & (expo < 0), "zero raised to a negative power")
        with np.errstate(over="ignore"):
            out = np.power(base, expo)
        return float(out) if out.ndim == 0 else out
    raise TypeError(f"not an Expr: {e!r}")


def evaluate(e: Expr, bindings: Mapping[str, object]):
    """Evaluate with IEEE double semantics.

    ``bindings`` maps variable names to floats or numpy arrays.  Returns a
    float for all-scalar bindings, an ndarray otherwise.  Domain violations
    raise EvalError instead of propagating NaN.
    """
    out = _eval(e, bindings)
    if isinstance(out, np.ndarray):
        return out
    arr = np.asarray(out, dtype=float)
    return float(arr) if arr.ndim == 0 else arr
