"""Exact constant expressions: rationals, pi, e, log, sqrt and inverse-Bessel values.

Trees are built through the smart constructors (:func:`const`, :func:`add`,
:func:`mul`, ...), which fold pure-rational arithmetic and keep a leading
rational coefficient in one canonical place.  ``str()`` prints with minimal
parentheses and re-parses to an identical tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import mpmath

from .errors import DomainError

__all__ = [
    "BinOp",
    "ConstExpr",
    "Func",
    "Inverse",
    "Neg",
    "Num",
    "Sym",
    "add",
    "const",
    "div",
    "func",
    "inverse_node",
    "mul",
    "neg",
    "scale",
    "sub",
    "symbol",
]

_ATOM, _UNARY, _MUL, _ADD = 4, 3, 2, 1


class ConstExpr:
    """Base node.  ``value`` is the binary64 value; ``mp(dps)`` a high-precision one."""

    @cached_property
    def value(self) -> float:
        v = self._float()
        if not math.isfinite(v):
            raise DomainError(f"{self} does not evaluate to a finite number")
        return v

    def __float__(self) -> float:
        return self.value

    def mp(self, dps: int = 30):
        with mpmath.workdps(dps):
            return +self._mp(dps)

    def as_fraction(self) -> Fraction | None:
        """The exact rational value, or None for irrational nodes."""
        return None

    @property
    def is_rational(self) -> bool:
        return self.as_fraction() is not None

    def __str__(self) -> str:
        return self._fmt()

    # subclasses: _float, _mp, _fmt, _prec


@dataclass(frozen=True, eq=True)
class Num(ConstExpr):
    """A nonnegative rational literal."""

    q: Fraction

    def __post_init__(self):
        if not isinstance(self.q, Fraction) or self.q < 0:
            raise ValueError("Num holds a nonnegative Fraction; negate with Neg")

    def _float(self):
        return float(self.q)

    def _mp(self, dps):
        return mpmath.mpf(self.q.numerator) / self.q.denominator

    def as_fraction(self):
        return self.q

    def _prec(self):
        return _ATOM if self.q.denominator == 1 else _MUL

    def _fmt(self):
        return str(self.q)


_MP_SYMBOLS = {"pi": lambda: mpmath.pi, "e": lambda: mpmath.e}


@dataclass(frozen=True, eq=True)
class Sym(ConstExpr):
    """A symbolic constant.  ``pi`` and ``e`` are built in; others carry a value."""

    name: str
    given: float | None = None

    def _float(self):
        if self.name == "pi":
            return math.pi
        if self.name == "e":
            return math.e
        return float(self.given)

    def _mp(self, dps):
        if self.name in _MP_SYMBOLS:
            return +_MP_SYMBOLS[self.name]()
        return mpmath.mpf(self.given)

    def _prec(self):
        return _ATOM

    def _fmt(self):
        return self.name


_FUNCS = {"log": (math.log, mpmath.log), "sqrt": (math.sqrt, mpmath.sqrt)}


@dataclass(frozen=True, eq=True)
class Func(ConstExpr):
    name: str
    arg: ConstExpr

    def _float(self):
        return _FUNCS[self.name][0](self.arg.value)

    def _mp(self, dps):
        return _FUNCS[self.name][1](self.arg._mp(dps))

    def _prec(self):
        return _ATOM

    def _fmt(self):
        return f"{self.name}({self.arg})"


@dataclass(frozen=True, eq=True)
class Neg(ConstExpr):
    arg: ConstExpr

    def _float(self):
        return -self.arg.value

    def _mp(self, dps):
        return -self.arg._mp(dps)

    def as_fraction(self):
        q = self.arg.as_fraction()
        return None if q is None else -q

    def _prec(self):
        return _MUL

    def _fmt(self):
        return "-" + _wrap(self.arg, self.arg._prec() < _MUL)


_OPS = {
    "+": (lambda a, b: a + b, _ADD),
    "-": (lambda a, b: a - b, _ADD),
    "*": (lambda a, b: a * b, _MUL),
    "/": (lambda a, b: a / b, _MUL),
}


@dataclass(frozen=True, eq=True)
class BinOp(ConstExpr):
    op: str
    left: ConstExpr
    right: ConstExpr

    def _float(self):
        if self.op == "/" and self.right.value == 0:
            raise DomainError(f"division by zero in {self}")
        return _OPS[self.op][0](self.left.value, self.right.value)

    def _mp(self, dps):
        return _OPS[self.op][0](self.left._mp(dps), self.right._mp(dps))

    def _prec(self):
        return _OPS[self.op][1]

    def _fmt(self):
        p = self._prec()
        left = _wrap(self.left, self.left._prec() < p)
        right = _wrap(self.right, self.right._prec() <= p)
        sep = f" {self.op} " if p == _ADD else self.op
        return left + sep + right


@dataclass(frozen=True, eq=True)
class Inverse(ConstExpr):
    """inverse_b(f_n)(arg) evaluated on the given real branch."""

    family: str
    n: int
    b: int
    arg: ConstExpr

    def _float(self):
        from .inverses import inverse

        return inverse(self.family, self.n, self.b, self.arg.value)

    def _mp(self, dps):
        from .inverses import inverse_mp

        return inverse_mp(self.family, self.n, self.b, self.arg._mp(dps), dps=dps, x0=self.value)

    def _prec(self):
        return _ATOM

    def _fmt(self):
        return f"inverse_{self.b}({self.family.lower()}_{self.n})({self.arg})"


def _wrap(e: ConstExpr, paren: bool) -> str:
    s = e._fmt()
    return f"({s})" if paren else s


# ---- smart constructors -------------------------------------------------


def const(q) -> ConstExpr:
    """A rational constant; negatives become ``Neg(Num(...))``."""
    q = Fraction(q)
    return Neg(Num(-q)) if q < 0 else Num(q)


def symbol(name: str, value: float | None = None) -> Sym:
    if name not in _MP_SYMBOLS and value is None:
        raise ValueError(f"symbol {name!r} needs a numeric value")
    return Sym(name, None if name in _MP_SYMBOLS else float(value))


def func(name: str, arg: ConstExpr) -> ConstExpr:
    if name not in _FUNCS:
        raise ValueError(f"unknown function {name!r}")
    v = arg.value
    if name == "log" and v <= 0:
        raise DomainError(f"log of nonpositive value {arg}")
    if name == "sqrt" and v < 0:
        raise DomainError(f"sqrt of negative value {arg}")
    q = arg.as_fraction()
    if name == "sqrt" and q is not None:
        r = _exact_sqrt(q)
        if r is not None:
            return Num(r)
    if name == "log" and q == 1:
        return Num(Fraction(0))
    return Func(name, arg)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def inverse_node(family, n: int, b: int, arg: ConstExpr) -> Inverse:
    from .laurent import Family

    return Inverse(Family.coerce(family).value, int(n), int(b), arg)


def _split(e: ConstExpr):
    """Write e as c*rest (recip False) or c/rest (recip True) with rational c."""
    q = e.as_fraction()
    if q is not None:
        return q, None, False
    if isinstance(e, Neg):
        c, rest, recip = _split(e.arg)
        return -c, rest, recip
    if isinstance(e, BinOp) and e.op in "*/":
        ql, qr = e.left.as_fraction(), e.right.as_fraction()
        if e.op == "*" and ql is not None:
            c, rest, recip = _split(e.right)
            return ql * c, rest, recip
        if e.op == "/" and qr is not None:
            c, rest, recip = _split(e.left)
            return c / qr, rest, recip
        if e.op == "/" and ql is not None:
            c, rest, recip = _split(e.right)
            if recip:
                return ql / c, rest, False
            return ql / c, rest, True
    return Fraction(1), e, False


def _build(c: Fraction, rest: ConstExpr | None, recip: bool) -> ConstExpr:
    if rest is None or c == 0:
        return const(c)
    p, q = abs(c.numerator), c.denominator
    if recip:
        den = rest if q == 1 else BinOp("*", Num(Fraction(q)), rest)
        core = BinOp("/", Num(Fraction(p)), den)
    elif p == 1 and q == 1:
        core = rest
    elif q == 1:
        core = BinOp("*", Num(Fraction(p)), rest)
    elif p == 1:
        core = BinOp("/", rest, Num(Fraction(q)))
    else:
        core = BinOp("*", Num(Fraction(p, q)), rest)
    return Neg(core) if c < 0 else core


def scale(r, e: ConstExpr) -> ConstExpr:
    """r * e for rational r, merged into e's leading coefficient."""
    c, rest, recip = _split(e)
    return _build(Fraction(r) * c, rest, recip)


def neg(a: ConstExpr) -> ConstExpr:
    return scale(-1, a)


def add(a: ConstExpr, b: ConstExpr) -> ConstExpr:
    qa, qb = a.as_fraction(), b.as_fraction()
    if qa is not None and qb is not None:
        return const(qa + qb)
    if qb == 0:
        return a
    if qa == 0:
        return b
    if isinstance(b, Neg):
        return BinOp("-", a, b.arg)
    return BinOp("+", a, b)


def sub(a: ConstExpr, b: ConstExpr) -> ConstExpr:
    qa, qb = a.as_fraction(), b.as_fraction()
    if qa is not None and qb is not None:
        return const(qa - qb)
    if qb == 0:
        return a
    if qa == 0:
        return neg(b)
    if isinstance(b, Neg):
        return BinOp("+", a, b.arg)
    return BinOp("-", a, b)


def mul(a: ConstExpr, b: ConstExpr) -> ConstExpr:
    qa, qb = a.as_fraction(), b.as_fraction()
    if qa is not None:
        return scale(qa, b)
    if qb is not None:
        return scale(qb, a)
    if isinstance(a, Neg) or isinstance(b, Neg):
        inner = mul(_strip(a), _strip(b))
        return neg(inner) if _sign(a) * _sign(b) < 0 else inner
    return BinOp("*", a, b)


def div(a: ConstExpr, b: ConstExpr) -> ConstExpr:
    qa, qb = a.as_fraction(), b.as_fraction()
    if qb is not None:
        if qb == 0:
            raise DomainError("division by zero")
        return scale(1 / qb, a)
    if qa is not None:
        c, rest, recip = _split(b)
        # qa/(c*rest) = (qa/c)/rest and qa/(c/rest) = (qa/c)*rest
        return _build(qa / c, rest, not recip)
    if isinstance(a, Neg) or isinstance(b, Neg):
        inner = div(_strip(a), _strip(b))
        return neg(inner) if _sign(a) * _sign(b) < 0 else inner
    return BinOp("/", a, b)


def _sign(e):
    return -1 if isinstance(e, Neg) else 1


def _strip(e):
    return e.arg if isinstance(e, Neg) else e
