"""Single-variable math expressions: parsing, evaluation, differentiation.

The CLI accepts functions as text; this module turns that text into an
immutable AST the rootfinder can evaluate.  The grammar, in EBNF:

    expr   = term { ("+" | "-") term } ;
    term   = unary { ("*" | "/") unary } ;
    unary  = "-" unary | power ;
    power  = atom [ "^" unary ] ;
    atom   = NUMBER | "x" | FUNC "(" expr ")" | "(" expr ")" ;
    FUNC   = "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" | "abs" ;
    NUMBER = digits [ "." digits ] [ ("e" | "E") ["+" | "-"] digits ] ;

"^" binds tighter than unary minus (so "-x^2" is -(x^2)) and is
right-associative ("2^3^2" is 512).  Multiplication must be explicit:
"2*x", never "2x".  Whitespace is ignored.  Parse errors carry a 0-based
byte offset.

Evaluation follows real arithmetic; domain violations (log of a
non-positive number, sqrt of a negative, division by zero) produce a
non-finite value rather than raising, so the rootfinder's own sampling
checks see them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "Expression",
    "Number",
    "Variable",
    "UnaryNeg",
    "BinaryOp",
    "FunctionCall",
    "ParseError",
    "UnsupportedDerivativeError",
    "parse",
    "eval_expr",
    "differentiate_expr",
    "expression_to_text",
]

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")


class ParseError(ValueError):
    """Malformed expression text; ``position`` is a 0-based byte offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at offset {position})")


class UnsupportedDerivativeError(ValueError):
    """The expression contains abs, which has no derivative at 0."""


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class UnaryNeg:
    operand: "Expression"


@dataclass(frozen=True)
class BinaryOp:
    op: str  # one of + - * / ^
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class FunctionCall:
    name: str
    argument: "Expression"


Expression = Number | Variable | UnaryNeg | BinaryOp | FunctionCall


_TOKEN_RE = re.compile(
    r"""
    (?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
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
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        self.advance()

    def parse(self) -> Expression:
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input starting with {value!r}", pos)
        return node

    def expr(self) -> Expression:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = BinaryOp(value, node, self.term())
            else:
                return node

    def term(self) -> Expression:
        node = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                node = BinaryOp(value, node, self.unary())
            else:
                return node

    def unary(self) -> Expression:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return UnaryNeg(self.unary())
        return self.power()

    def power(self) -> Expression:
        node = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            # right-associative, and the exponent may carry its own sign
            return BinaryOp("^", node, self.unary())
        return node

    def atom(self) -> Expression:
        kind, value, pos = self.advance()
        if kind == "number":
            num = float(value)
            if not math.isfinite(num):
                raise ParseError(f"number literal {value!r} overflows", pos)
            return Number(num)
        if kind == "name":
            if value == "x":
                return Variable()
            if value in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return FunctionCall(value, arg)
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            node = self.expr()
            kind, _, pos = self.peek()
            if kind != "op" or self.peek()[1] != ")":
                raise ParseError("unbalanced parenthesis", pos)
            self.advance()
            return node
        raise ParseError(f"expected a value, got {value!r}" if value else "unexpected end of input", pos)


def parse(text: str) -> Expression:
    """Parse expression text into an AST.

    Raises :class:`ParseError` with a byte offset on malformed input.
    """
    return _Parser(text).parse()


def _safe_pow(base: float, exponent: float) -> float:
    try:
        return math.pow(base, exponent)
    except ValueError:  # e.g. negative base with fractional exponent
        return math.nan
    except OverflowError:
        return math.inf


def _safe_div(num: float, den: float) -> float:
    if den == 0.0:
        if num == 0.0 or math.isnan(num):
            return math.nan
        return math.copysign(math.inf, num) * math.copysign(1.0, den)
    return num / den


def _call(name: str, arg: float) -> float:
    try:
        if name == "sin":
            return math.sin(arg)
        if name == "cos":
            return math.cos(arg)
        if name == "tan":
            return math.tan(arg)
        if name == "exp":
            return math.exp(arg)
        if name == "log":
            return math.log(arg) if arg > 0 else math.nan
        if name == "sqrt":
            return math.sqrt(arg) if arg >= 0 else math.nan
        if name == "abs":
            return abs(arg)
    except (ValueError, OverflowError):
        return math.inf if name == "exp" and arg > 0 else math.nan
    raise ValueError(f"unknown function {name!r}")


def eval_expr(expr: Expression, x: float) -> float:
    """Evaluate the expression at x with real-arithmetic semantics.

    Never raises on domain violations; the result is NaN or +/-inf instead.
    """
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, Variable):
        return float(x)
    if isinstance(expr, UnaryNeg):
        return -eval_expr(expr.operand, x)
    if isinstance(expr, FunctionCall):
        return _call(expr.name, eval_expr(expr.argument, x))
    left = eval_expr(expr.left, x)
    right = eval_expr(expr.right, x)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if expr.op == "/":
        return _safe_div(left, right)
    return _safe_pow(left, right)


def _num(value: float) -> Expression:
    # negative literals print as unary minus, keeping printed trees
    # reparseable; -0.0 would otherwise print with a stray sign
    if value == 0.0:
        return Number(0.0)
    if value < 0:
        return UnaryNeg(Number(-value))
    return Number(value)


def _is_const(node: Expression, value: float | None = None) -> bool:
    return isinstance(node, Number) and (value is None or node.value == value)


def _add(a: Expression, b: Expression) -> Expression:
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if isinstance(a, Number) and isinstance(b, Number) and math.isfinite(a.value + b.value):
        return _num(a.value + b.value)
    return BinaryOp("+", a, b)


def _sub(a: Expression, b: Expression) -> Expression:
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    if isinstance(a, Number) and isinstance(b, Number) and math.isfinite(a.value - b.value):
        return _num(a.value - b.value)
    return BinaryOp("-", a, b)


def _mul(a: Expression, b: Expression) -> Expression:
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Number(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if isinstance(a, Number) and isinstance(b, Number) and math.isfinite(a.value * b.value):
        return _num(a.value * b.value)
    return BinaryOp("*", a, b)


def _div(a: Expression, b: Expression) -> Expression:
    if _is_const(a, 0.0) and not _is_const(b, 0.0):
        return Number(0.0)
    if _is_const(b, 1.0):
        return a
    return BinaryOp("/", a, b)


def _neg(a: Expression) -> Expression:
    if isinstance(a, Number):
        return _num(-a.value)
    if isinstance(a, UnaryNeg):
        return a.operand
    return UnaryNeg(a)


def differentiate_expr(expr: Expression) -> Expression:
    """Symbolic derivative with respect to x.

    Standard rules; no simplification is promised beyond folding of literal
    arithmetic.  Raises :class:`UnsupportedDerivativeError` if the
    expression contains abs (not differentiable at 0); callers are expected
    to fall back to the differentiated proxy series.
    """
    if isinstance(expr, Number):
        return Number(0.0)
    if isinstance(expr, Variable):
        return Number(1.0)
    if isinstance(expr, UnaryNeg):
        return _neg(differentiate_expr(expr.operand))
    if isinstance(expr, FunctionCall):
        u = expr.argument
        du = differentiate_expr(u)
        if expr.name == "sin":
            return _mul(FunctionCall("cos", u), du)
        if expr.name == "cos":
            return _neg(_mul(FunctionCall("sin", u), du))
        if expr.name == "tan":
            return _div(du, BinaryOp("^", FunctionCall("cos", u), Number(2.0)))
        if expr.name == "exp":
            return _mul(FunctionCall("exp", u), du)
        if expr.name == "log":
            return _div(du, u)
        if expr.name == "sqrt":
            return _div(du, _mul(Number(2.0), FunctionCall("sqrt", u)))
        raise UnsupportedDerivativeError("abs(...) is not differentiable at 0")
    u, v = expr.left, expr.right
    du = differentiate_expr(u)
    dv = differentiate_expr(v)
    if expr.op == "+":
        return _add(du, dv)
    if expr.op == "-":
        return _sub(du, dv)
    if expr.op == "*":
        return _add(_mul(du, v), _mul(u, dv))
    if expr.op == "/":
        return _div(_sub(_mul(du, v), _mul(u, dv)), BinaryOp("^", v, Number(2.0)))
    # power rule; the general case goes through u^v * (v'*log(u) + v*u'/u)
    if isinstance(v, Number):
        return _mul(_mul(v, BinaryOp("^", u, _num(v.value - 1.0))), du)
    log_term = _mul(dv, FunctionCall("log", u))
    ratio_term = _mul(v, _div(du, u))
    return _mul(BinaryOp("^", u, v), _add(log_term, ratio_term))


_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5


def _prec(node: Expression) -> int:
    if isinstance(node, BinaryOp):
        if node.op in "+-":
            return _PREC_ADD
        if node.op in "*/":
            return _PREC_MUL
        return _PREC_POW
    if isinstance(node, UnaryNeg):
        return _PREC_NEG
    return _PREC_ATOM


def _wrap(text: str, needs_parens: bool) -> str:
    return f"({text})" if needs_parens else text


def expression_to_text(expr: Expression) -> str:
    """Render an AST back to text that reparses to the same structure."""
    if isinstance(expr, Number):
        return repr(expr.value)
    if isinstance(expr, Variable):
        return "x"
    if isinstance(expr, FunctionCall):
        return f"{expr.name}({expression_to_text(expr.argument)})"
    if isinstance(expr, UnaryNeg):
        inner = expression_to_text(expr.operand)
        return "-" + _wrap(inner, _prec(expr.operand) < _PREC_NEG)
    left = expression_to_text(expr.left)
    right = expression_to_text(expr.right)
    if expr.op in "+-":
        return (
            _wrap(left, _prec(expr.left) < _PREC_ADD)
            + expr.op
            + _wrap(right, _prec(expr.right) <= _PREC_ADD)
        )
    if expr.op in "*/":
        return (
            _wrap(left, _prec(expr.left) < _PREC_MUL)
            + expr.op
            + _wrap(right, _prec(expr.right) <= _PREC_MUL)
        )
    return (
        _wrap(left, _prec(expr.left) <= _PREC_POW)
        + "^"
        + _wrap(right, _prec(expr.right) < _PREC_NEG)
    )
