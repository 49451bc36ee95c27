"""Recognize a decimal constant as inverse_b(f_n)(c0) with a simple c0.

The search runs forward: evaluate t = f_n(x) at the input x for each family
and order, snap t to a small rational (optionally times pi, 1/pi or log 2),
recompute the inverse at high precision and score the result.

Scores
------
agreement
    Matching significant digits, min(P, -log10(relative error)), floored at 0.
entropy10
    Description length of the closed form: log10|k| per nonzero integer atom
    plus one unit per operator, function and symbolic constant.
margin
    agreement - entropy10.  Larger is more convincing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import mpmath

from .constexpr import BinOp, ConstExpr, Func, Inverse, Neg, Num, Sym, const, div, func, inverse_node, scale, symbol
from .errors import InvBesselError
from .extrema import branch_of
from .laurent import Family, evaluate_mp

__all__ = [
    "Candidate",
    "FloatInput",
    "SearchConfig",
    "agreement",
    "convergents",
    "entropy10",
    "recognize",
]

INVERSE_NODE_WEIGHT = 3.0

_DECIMAL = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class FloatInput:
    """A decimal string with its value and count of significant digits."""

    text: str
    value: float = field(init=False)
    precision: int = field(init=False)

    def __post_init__(self):
        s = self.text.strip()
        if not _DECIMAL.fullmatch(s):
            raise ValueError(f"not a decimal number: {self.text!r}")
        mantissa = re.split(r"[eE]", s)[0].lstrip("+-").replace(".", "").lstrip("0")
        v = float(s)
        if v == 0 or not math.isfinite(v):
            raise ValueError("the input must be finite and nonzero")
        if len(mantissa) < 6:
            raise ValueError(f"at least 6 significant digits are needed, got {len(mantissa)}")
        object.__setattr__(self, "text", s)
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "precision", len(mantissa))

    def mp(self, dps: int):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.text)


@dataclass(frozen=True)
class SearchConfig:
    max_order: int = 3
    max_abs_branch: int = 8
    max_den: int = 1000
    multipliers: bool = True
    min_margin: float = 0.0
    families: tuple[str, ...] = ("Y", "J", "I", "K")

    def __post_init__(self):
        if self.max_order < 0:
            raise ValueError("max_order must be >= 0")
        if self.max_den < 1:
            raise ValueError("max_den must be >= 1")
        if self.max_abs_branch < 0:
            raise ValueError("max_abs_branch must be >= 0")
        object.__setattr__(self, "families", tuple(Family.coerce(f).value for f in self.families))


@dataclass(frozen=True)
class Candidate:
    family: Family
    n: int
    b: int
    c0: ConstExpr
    value: float
    agreement: float
    entropy10: float
    margin: float

    @property
    def closed_form(self) -> Inverse:
        return inverse_node(self.family, self.n, self.b, self.c0)

    def key(self):
        return (-self.margin, "YJIK".index(self.family.value), self.n, self.b, str(self.c0))

    def __str__(self) -> str:
        return str(self.closed_form)


# ---- scoring ------------------------------------------------------------


def _log10_atom(k: int) -> float:
    return math.log10(abs(k)) if k else 0.0


def entropy10(expr) -> float:
    """Description length in decimal digits.

    A rational literal p/q costs log10|p| + log10|q| and scaling by one is
    free.  Unary minus, every other operator, every function and every
    symbolic constant cost 1.  inverse_b(f_n)(a) costs 3 (the function f_n,
    the inversion and the application) plus the atoms n, b and the cost of a.

    >>> entropy10(inverse_node("Y", 0, 1, const(-1)))
    4.0
    """
    if isinstance(expr, Candidate):
        expr = expr.closed_form
    if isinstance(expr, Num):
        return _log10_atom(expr.q.numerator) + _log10_atom(expr.q.denominator)
    if isinstance(expr, Sym):
        return 1.0
    if isinstance(expr, Func):
        return 1.0 + entropy10(expr.arg)
    if isinstance(expr, Neg):
        return 1.0 + entropy10(expr.arg)
    if isinstance(expr, Inverse):
        return INVERSE_NODE_WEIGHT + _log10_atom(expr.n) + _log10_atom(expr.b) + entropy10(expr.arg)
    if isinstance(expr, BinOp):
        inner = entropy10(expr.left) + entropy10(expr.right)
        literal = isinstance(expr.right, Num) or (expr.op == "*" and isinstance(expr.left, Num))
        return inner if literal else 1.0 + inner
    raise TypeError(f"cannot score {type(expr).__name__}")


def agreement(candidate, reference: FloatInput) -> float:
    """Significant digits shared by ``candidate`` and the input.

    ``candidate`` may be a float or an mpmath number.

    >>> round(agreement(1.000001 * 0.739085133215160642, FloatInput("0.739085133215160642")), 6)
    6.0
    """
    p = reference.precision
    with mpmath.workdps(p + 15):
        x = reference.mp(p + 15)
        c = mpmath.mpf(candidate)
        if c == x:
            return float(p)
        if mpmath.sign(c) != mpmath.sign(x):
            return 0.0
        rel = abs(c - x) / abs(x)
        return max(0.0, min(float(p), float(-mpmath.log10(rel))))


# ---- search -------------------------------------------------------------


def convergents(x: Fraction, max_den: int) -> Iterator[Fraction]:
    """Continued-fraction convergents of x with denominator <= max_den."""
    h0, h1, k0, k1 = 0, 1, 1, 0
    r = x
    while True:
        a = math.floor(r)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_den:
            return
        yield Fraction(h1, k1)
        frac = r - a
        if frac == 0:
            return
        r = 1 / frac


def _mp_fraction(v) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(v)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man) * 2 ** int(exp)


def _snaps(t, tol, cfg: SearchConfig):
    """(c0 expression, exact-or-mp value) pairs within tol of t."""
    if abs(t) <= tol:
        yield const(0)
        return
    bases = [(None, mpmath.mpf(1))]
    if cfg.multipliers:
        bases += [("pi", +mpmath.pi), ("1/pi", 1 / mpmath.pi), ("log2", mpmath.log(2))]
    for name, m in bases:
        ratio = t / m
        for q in convergents(_mp_fraction(ratio), cfg.max_den):
            if abs(q.numerator) > cfg.max_den or q == 0:
                continue
            if abs(q * m - t) > tol:
                continue
            if name is None:
                yield const(q)
            elif name == "pi":
                yield scale(q, symbol("pi"))
            elif name == "1/pi":
                yield div(const(q), symbol("pi"))
            else:
                yield scale(q, func("log", const(2)))
            break


def _candidates_for(fam: Family, n: int, inp: FloatInput, cfg: SearchConfig, dps: int):
    try:
        b = branch_of(fam, n, inp.value)
    except InvBesselError:
        return []
    if abs(b) > cfg.max_abs_branch:
        return []
    with mpmath.workdps(dps):
        x = inp.mp(dps)
        t = evaluate_mp(fam, n, x, dps=dps)
        slope = evaluate_mp(fam, n, x, deriv=1, dps=dps)
        tol = mpmath.mpf(10) ** (-(inp.precision - 2)) * max(abs(t), abs(x * slope))
        out = []
        for c0 in _snaps(t, tol, cfg):
            node = inverse_node(fam, n, b, c0)
            try:
                v = node.mp(dps)
            except InvBesselError:
                continue
            agr = agreement(v, inp)
            ent = entropy10(node)
            out.append(Candidate(fam, n, b, c0, float(v), agr, ent, agr - ent))
    return out


def recognize(inp, cfg: SearchConfig | None = None) -> list[Candidate]:
    """Ranked closed-form candidates for a decimal constant, best margin first.

    ``inp`` is a :class:`FloatInput` or a decimal string.
    """
    if not isinstance(inp, FloatInput):
        inp = FloatInput(str(inp))
    cfg = cfg or SearchConfig()
    dps = inp.precision + 12
    found = {}
    for fam in cfg.families:
        for n in range(cfg.max_order + 1):
            for cand in _candidates_for(Family.coerce(fam), n, inp, cfg, dps):
                if cand.margin >= cfg.min_margin:
                    found.setdefault(str(cand), cand)
    return sorted(found.values(), key=Candidate.key)
