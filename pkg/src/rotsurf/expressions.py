"""Expression language for profile curves.

A small closed grammar over one variable ``t``: real literals, the
constants ``pi`` and ``e``, binary ``+ - * / ^`` (with ``^`` binding
tightest and right-associative), unary minus, and the functions ``sin``,
``cos``, ``tan``, ``sinh``, ``cosh``, ``tanh``, ``exp``, ``log``,
``sqrt``.  Expressions are immutable trees; evaluation is pure and never
returns NaN or infinity (domain faults raise ``DomainError`` instead).

``differentiate`` produces exact symbolic derivatives with constant
subtrees folded, so first and second derivatives of a profile are
noise-free wherever curvature formulas consume them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "Expr",
    "Literal",
    "Variable",
    "Negate",
    "Binary",
    "Call",
    "ExprError",
    "ParseError",
    "DomainError",
    "parse",
    "evaluate",
    "differentiate",
    "to_text",
    "ProfileFunction",
]


class ExprError(ValueError):
    """Base class for expression failures."""


class ParseError(ExprError):
    """Malformed input.  ``position`` is 1-based; ``kind`` is one of
    ``syntax``, ``unknown_identifier``, ``arity``."""

    def __init__(self, message: str, position: int, kind: str = "syntax"):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.kind = kind


class DomainError(ExprError):
    """Evaluation left the real domain (log/sqrt of a negative number,
    division by zero, zero to a negative power, overflow)."""


class Expr:
    """Marker base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Literal(Expr):
    value: float


@dataclass(frozen=True)
class Variable(Expr):
    pass


@dataclass(frozen=True)
class Negate(Expr):
    arg: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # one of + - * / ^
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    arg: Expr


_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "exp": math.exp,
    "log": None,   # domain-checked below
    "sqrt": None,
}

_CONSTANTS = {"pi": math.pi, "e": math.e}

_VARIABLE_NAME = "t"

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number | name | op | end
    text: str
    pos: int   # 0-based offset into the source


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    index = 0
    while index < len(text):
        match = _TOKEN_RE.match(text, index)
        if match is None:
            stripped = text[index:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad_at]!r}", bad_at + 1)
        for kind in ("number", "name", "op"):
            value = match.group(kind)
            if value is not None:
                tokens.append(_Token(kind, value, match.start(kind)))
                break
        index = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent with precedence  ^  >  unary -  >  * /  >  + -."""

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, symbol: str):
        token = self.peek()
        if token.kind != "op" or token.text != symbol:
            raise ParseError(f"expected {symbol!r}", token.pos + 1)
        return self.advance()

    def parse(self) -> Expr:
        expr = self.sum()
        trailing = self.peek()
        if trailing.kind != "end":
            raise ParseError(f"unexpected {trailing.text!r}", trailing.pos + 1)
        return expr

    def sum(self) -> Expr:
        expr = self.product()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            expr = Binary(op, expr, self.product())
        return expr

    def product(self) -> Expr:
        expr = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            expr = Binary(op, expr, self.unary())
        return expr

    def unary(self) -> Expr:
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            return Negate(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.advance()
            # right-associative, and the exponent may be unary-negated
            return Binary("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        token = self.advance()
        if token.kind == "number":
            return Literal(float(token.text))
        if token.kind == "op" and token.text == "(":
            expr = self.sum()
            self.expect_op(")")
            return expr
        if token.kind == "name":
            follower = self.peek()
            if follower.kind == "op" and follower.text == "(":
                if token.text not in _FUNCTIONS:
                    raise ParseError(f"unknown function {token.text!r}",
                                     token.pos + 1, kind="unknown_identifier")
                self.advance()
                arg = self.sum()
                comma = self.peek()
                if comma.kind == "op" and comma.text == ",":
                    raise ParseError(f"{token.text} takes exactly one argument",
                                     comma.pos + 1, kind="arity")
                self.expect_op(")")
                return Call(token.text, arg)
            if token.text == _VARIABLE_NAME:
                return Variable()
            if token.text in _CONSTANTS:
                return Literal(_CONSTANTS[token.text])
            raise ParseError(f"unknown identifier {token.text!r}",
                             token.pos + 1, kind="unknown_identifier")
        raise ParseError("expected a value", token.pos + 1)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree over the variable ``t``."""
    if not text or not text.strip():
        raise ParseError("empty expression", 1)
    return _Parser(_tokenize(text)).parse()


def _checked(value: float, context: str) -> float:
    if not math.isfinite(value):
        raise DomainError(f"{context} produced a non-finite value")
    return value


def evaluate(expr: Expr, t: float) -> float:
    """Evaluate at ``t``; domain faults raise ``DomainError``, never NaN."""
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, Variable):
        return t
    if isinstance(expr, Negate):
        return -evaluate(expr.arg, t)
    if isinstance(expr, Binary):
        left = evaluate(expr.left, t)
        right = evaluate(expr.right, t)
        op = expr.op
        if op == "+":
            return _checked(left + right, "addition")
        if op == "-":
            return _checked(left - right, "subtraction")
        if op == "*":
            return _checked(left * right, "multiplication")
        if op == "/":
            if right == 0.0:
                raise DomainError("division by zero")
            return _checked(left / right, "division")
        # power
        if left == 0.0 and right < 0.0:
            raise DomainError("zero raised to a negative power")
        if left < 0.0 and right != math.floor(right):
            raise DomainError("negative base with non-integer exponent")
        try:
            return _checked(left ** right, "power")
        except OverflowError as exc:
            raise DomainError("power overflow") from exc
    if isinstance(expr, Call):
        arg = evaluate(expr.arg, t)
        name = expr.name
        if name == "log":
            if arg <= 0.0:
                raise DomainError("log of a non-positive number")
            return math.log(arg)
        if name == "sqrt":
            if arg < 0.0:
                raise DomainError("sqrt of a negative number")
            return math.sqrt(arg)
        try:
            return _checked(_FUNCTIONS[name](arg), name)
        except OverflowError as exc:
            raise DomainError(f"{name} overflow") from exc
    raise TypeError(f"not an expression node: {expr!r}")


# ---------------------------------------------------------------------------
# symbolic differentiation with constant folding

def _lit(value: float) -> Literal:
    return Literal(float(value))


_ZERO = _lit(0.0)
_ONE = _lit(1.0)


def _is_const(expr: Expr, value: float | None = None) -> bool:
    if not isinstance(expr, Literal):
        return False
    return value is None or expr.value == value


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if isinstance(a, Literal) and isinstance(b, Literal):
        return _lit(a.value + b.value)
    return Binary("+", a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0.0):
        return a
    if isinstance(a, Literal) and isinstance(b, Literal):
        return _lit(a.value - b.value)
    if _is_const(a, 0.0):
        return _neg(b)
    return Binary("-", a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Literal):
        return _lit(-a.value)
    if isinstance(a, Negate):
        return a.arg
    return Negate(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return _ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if isinstance(a, Literal) and isinstance(b, Literal):
        return _lit(a.value * b.value)
    return Binary("*", a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return _ZERO
    if _is_const(b, 1.0):
        return a
    if isinstance(a, Literal) and isinstance(b, Literal) and b.value != 0.0:
        return _lit(a.value / b.value)
    return Binary("/", a, b)


def _pow(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 1.0):
        return a
    if _is_const(b, 0.0):
        return _ONE
    return Binary("^", a, b)


def differentiate(expr: Expr) -> Expr:
    """Exact derivative with respect to ``t``, constants folded."""
    if isinstance(expr, Literal):
        return _ZERO
    if isinstance(expr, Variable):
        return _ONE
    if isinstance(expr, Negate):
        return _neg(differentiate(expr.arg))
    if isinstance(expr, Binary):
        da = differentiate(expr.left)
        db = differentiate(expr.right)
        a, b = expr.left, expr.right
        op = expr.op
        if op == "+":
            return _add(da, db)
        if op == "-":
            return _sub(da, db)
        if op == "*":
            return _add(_mul(da, b), _mul(a, db))
        if op == "/":
            return _div(_sub(_mul(da, b), _mul(a, db)), _pow(b, _lit(2.0)))
        # power rule for a constant exponent, logarithmic rule otherwise
        if isinstance(b, Literal):
            return _mul(_mul(b, _pow(a, _lit(b.value - 1.0))), da)
        return _mul(_pow(a, b), _add(_mul(db, Call("log", a)), _mul(b, _div(da, a))))
    if isinstance(expr, Call):
        u = expr.arg
        du = differentiate(u)
        name = expr.name
        if name == "sin":
            return _mul(Call("cos", u), du)
        if name == "cos":
            return _neg(_mul(Call("sin", u), du))
        if name == "tan":
            return _div(du, _pow(Call("cos", u), _lit(2.0)))
        if name == "sinh":
            return _mul(Call("cosh", u), du)
        if name == "cosh":
            return _mul(Call("sinh", u), du)
        if name == "tanh":
            return _div(du, _pow(Call("cosh", u), _lit(2.0)))
        if name == "exp":
            return _mul(Call("exp", u), du)
        if name == "log":
            return _div(du, u)
        if name == "sqrt":
            return _div(du, _mul(_lit(2.0), Call("sqrt", u)))
    raise TypeError(f"not an expression node: {expr!r}")


# ---------------------------------------------------------------------------
# canonical printing

_LEVEL_SUM = 1
_LEVEL_PRODUCT = 2
_LEVEL_UNARY = 3
_LEVEL_POWER = 4
_LEVEL_ATOM = 5


def _level(expr: Expr) -> int:
    if isinstance(expr, Binary):
        if expr.op in "+-":
            return _LEVEL_SUM
        if expr.op in "*/":
            return _LEVEL_PRODUCT
        return _LEVEL_POWER
    if isinstance(expr, Negate):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def _wrap(expr: Expr, minimum: int) -> str:
    text = to_text(expr)
    if _level(expr) < minimum:
        return f"({text})"
    return text


def to_text(expr: Expr) -> str:
    """Canonical text form; reparsing reproduces the same tree values."""
    if isinstance(expr, Literal):
        return repr(expr.value)
    if isinstance(expr, Variable):
        return _VARIABLE_NAME
    if isinstance(expr, Negate):
        return "-" + _wrap(expr.arg, _LEVEL_UNARY)
    if isinstance(expr, Binary):
        own = _level(expr)
        if expr.op == "^":
            # right-associative: parenthesise an exponent-shaped left child
            left = _wrap(expr.left, _LEVEL_ATOM)
            right = _wrap(expr.right, _LEVEL_UNARY)
            return f"{left}^{right}"
        left = _wrap(expr.left, own)
        right = _wrap(expr.right, own + 1)
        return f"{left} {expr.op} {right}"
    if isinstance(expr, Call):
        return f"{expr.name}({to_text(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfileFunction:
    """A scalar profile with exact first and second derivatives on a
    closed interval.  Evaluation outside [t_min, t_max] is a hard fault
    unless ``check=False`` (used by finite-difference probes that must
    straddle an evaluation point)."""

    value: Expr
    d1: Expr
    d2: Expr
    t_min: float
    t_max: float
    text: str

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise ValueError("profile domain must have finite endpoints")
        if not self.t_min < self.t_max:
            raise ValueError("profile domain must satisfy t_min < t_max")

    @classmethod
    def from_text(cls, text: str, t_min: float, t_max: float) -> "ProfileFunction":
        value = parse(text)
        d1 = differentiate(value)
        d2 = differentiate(d1)
        return cls(value, d1, d2, float(t_min), float(t_max), text)

    def _guard(self, t: float, check: bool):
        if check and not (self.t_min <= t <= self.t_max):
            raise DomainError(
                f"t={t!r} outside profile domain [{self.t_min}, {self.t_max}]")

    def evaluate(self, t: float, check: bool = True) -> float:
        self._guard(t, check)
        return evaluate(self.value, t)

    def derivative(self, t: float, check: bool = True) -> float:
        self._guard(t, check)
        return evaluate(self.d1, t)

    def second_derivative(self, t: float, check: bool = True) -> float:
        self._guard(t, check)
        return evaluate(self.d2, t)
