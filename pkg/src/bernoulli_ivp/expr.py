"""Expression language for coefficient functions, forcings and exact solutions.

Grammar (the variable is always ``x``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?
    primary := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'

``^`` binds tighter than unary minus and is right-associative, so ``-x^2``
is ``-(x^2)`` and ``2^3^2`` is ``2^(3^2)``.  Exponents must not depend on
``x``.  There is no implicit multiplication.

Evaluation is vectorised over numpy arrays.  Domain violations come back as
non-finite values and are left for the caller to reject.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import LexError, ParseError
from .poly import RationalPoly

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "FUNCTIONS",
    "parse",
    "eval_expr",
    "pretty",
    "to_polynomial",
    "IntegrableFunction",
    "Constant",
    "Polynomial",
    "Closure",
    "as_integrable",
]

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
    "abs": np.abs,
}

VARIABLE = "x"


class Expr:
    """Base class of the immutable expression tree."""

    def __call__(self, x):
        return eval_expr(self, x)

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | ident | op | eof
    text: str
    pos: int


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise LexError(f"unexpected character {src[pos]!r}", src, pos)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(src)))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, src):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, self.src, tok.pos)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind != "op":
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def parse(self):
        if self.tok.kind == "eof":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            e = BinOp(op, e, self.term())
        return e

    def term(self):
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            e = BinOp(op, e, self.unary())
        return e

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        if self.tok.kind == "op" and self.tok.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            exponent = self.unary()
            if _depends_on_x(exponent):
                raise self.error("exponent must not depend on x", caret)
            return BinOp("^", base, exponent)
        return base

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == VARIABLE:
                return Var()
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise ParseError(f"unknown function or variable {tok.text!r}", self.src, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "eof":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def parse(src):
    """Parse ``src`` into an :class:`Expr`.

    Raises :class:`~bernoulli_ivp.errors.LexError` or
    :class:`~bernoulli_ivp.errors.ParseError` carrying the source position.
    """
    return _Parser(src).parse()


def _depends_on_x(e):
    if isinstance(e, Var):
        return True
    if isinstance(e, Num):
        return False
    if isinstance(e, Neg):
        return _depends_on_x(e.operand)
    if isinstance(e, Call):
        return _depends_on_x(e.arg)
    return _depends_on_x(e.left) or _depends_on_x(e.right)


# ---------------------------------------------------------------------------
# evaluation


def _int_power(base, k):
    """``base**k`` for integer ``k`` by repeated squaring."""
    if k < 0:
        return 1.0 / _int_power(base, -k)
    result = np.ones_like(base)
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def _eval(e, x):
    if isinstance(e, Num):
        return np.full_like(x, e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_eval(e.operand, x)
    if isinstance(e, Call):
        return FUNCTIONS[e.func](_eval(e.arg, x))
    left = _eval(e.left, x)
    if e.op == "^":
        expo = float(_eval(e.right, np.zeros(1))[0])
        if expo.is_integer() and abs(expo) <= 2**31:
            return _int_power(left, int(expo))
        return np.power(left, expo)
    right = _eval(e.right, x)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    return left / right


def eval_expr(e, x):
    """Evaluate ``e`` at ``x`` (scalar in, float out; array in, array out)."""
    xa = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        y = _eval(e, np.atleast_1d(xa).astype(float))
    y = np.broadcast_to(y, np.atleast_1d(xa).shape)
    return float(y[0]) if xa.ndim == 0 else y.reshape(xa.shape)


# ---------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _prec(e):
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg) or (isinstance(e, Num) and math.copysign(1.0, e.value) < 0):
        return _PREC["neg"]
    return _PREC["atom"]


def _fmt_num(v):
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def pretty(e):
    """Render with the minimum parentheses needed to parse back to the same tree."""
    if isinstance(e, Num):
        return _fmt_num(e.value)
    if isinstance(e, Var):
        return VARIABLE
    if isinstance(e, Call):
        return f"{e.func}({pretty(e.arg)})"
    if isinstance(e, Neg):
        inner = pretty(e.operand)
        return f"-({inner})" if _prec(e.operand) < _PREC["neg"] else f"-{inner}"
    p = _PREC[e.op]
    left, right = pretty(e.left), pretty(e.right)
    if e.op == "^":
        if _prec(e.left) <= p:
            left = f"({left})"
        if _prec(e.right) < _PREC["neg"]:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(e.left) < p:
        left = f"({left})"
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left} {e.op} {right}"


def to_polynomial(e):
    """Exact :class:`RationalPoly` for polynomial expressions, else ``None``.

    Float literals convert through their exact binary value.
    """
    if isinstance(e, Num):
        return RationalPoly([Fraction(e.value)]) if math.isfinite(e.value) else None
    if isinstance(e, Var):
        return RationalPoly([0, 1])
    if isinstance(e, Neg):
        p = to_polynomial(e.operand)
        return None if p is None else -p
    if isinstance(e, Call):
        return None
    left = to_polynomial(e.left)
    right = to_polynomial(e.right)
    if left is None or right is None:
        return None
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if e.op == "/":
        if right.degree != 0:
            return None
        return left / right[0]
    # ^
    if right.degree > 0:
        return None
    k = right[0]
    if k.denominator != 1 or k < 0 or k > 64:
        return None
    out = RationalPoly([1])
    for _ in range(int(k)):
        out = out * left
    return out


# ---------------------------------------------------------------------------
# integrable functions


class IntegrableFunction:
    """A real function on [0, 1] (or a problem's domain), vectorised."""

    label = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def is_constant(self):
        return False

    def __repr__(self):
        return f"{type(self).__name__}({self.label})"


class Constant(IntegrableFunction):
    def __init__(self, value):
        self.value = float(value)
        self.label = _fmt_num(self.value)

    @property
    def is_constant(self):
        return True

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        return self.value if xa.ndim == 0 else np.full(xa.shape, self.value)


class Polynomial(IntegrableFunction):
    """Exact rational polynomial; projections of these are computed without quadrature."""

    def __init__(self, poly):
        self.poly = poly if isinstance(poly, RationalPoly) else RationalPoly(poly)
        self.label = str(self.poly).replace("z", "x")

    def __call__(self, x):
        return self.poly(np.asarray(x, dtype=float))


class Closure(IntegrableFunction):
    """Any callable, typically a parsed :class:`Expr`."""

    def __init__(self, func, label=None):
        self.func = func
        self.label = label or (pretty(func) if isinstance(func, Expr) else getattr(func, "__name__", "f"))

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            y = np.asarray(self.func(xa), dtype=float)
        if xa.ndim == 0:
            return float(y)
        return np.broadcast_to(y, xa.shape).copy()


def as_integrable(obj):
    """Coerce numbers, strings, expressions, polynomials and callables."""
    if isinstance(obj, IntegrableFunction):
        return obj
    if isinstance(obj, (int, float, Fraction)) and not isinstance(obj, bool):
        return Constant(obj)
    if isinstance(obj, RationalPoly):
        return Constant(float(obj[0])) if obj.degree <= 0 else Polynomial(obj)
    if isinstance(obj, str):
        obj = parse(obj)
    if isinstance(obj, Expr):
        if not _depends_on_x(obj):
            return Constant(eval_expr(obj, 0.0))
        poly = to_polynomial(obj)
        if poly is not None:
            f = Polynomial(poly)
            f.label = pretty(obj)
            return f
        return Closure(obj)
    if callable(obj):
        return Closure(obj)
    raise TypeError(f"cannot interpret {obj!r} as a function")
