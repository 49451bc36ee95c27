"""Reduce Laurent-trig equations to a table row f_n(x) = c0 and list every real solution.

An equation qualifies when, after moving constants right and multiplying by
a power of x, its left side is a rational multiple of one row of the
coefficient tables.  The real solutions are then inverse_b(f_n)(c0) over the
branches b whose ordinate range holds c0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constexpr import ConstExpr, Inverse, const, inverse_node, scale
from .errors import MixedFactors, NotTransformable
from .inverses import branches_containing, inverse
from .laurent import Family, coefficients
from .parser import RawEquation, Term, parse_equation

__all__ = [
    "EquationNormalForm",
    "Limits",
    "Solution",
    "SolutionSet",
    "normalize",
    "solve",
    "solve_equation",
]

_FAMILY_OF = {"cos": Family.Y, "sin": Family.J, "sinh": Family.I, "exp": Family.K}
_GROUP = {"cos": "trig", "sin": "trig", "cosh": "hyp", "sinh": "hyp", "exp": "exp"}
_AT_ZERO = {"cos": 1, "sin": 0, "cosh": 1, "sinh": 0, "exp": 1, "one": 1}


@dataclass(frozen=True)
class EquationNormalForm:
    """``lam * (left side after the shift) = f_n(x)`` and ``c0 = lam * right side``.

    ``shift`` is the power of x the equation was multiplied by.  ``zero_annihilated``
    means x = 0 solves the equation as written but not f_n(x) = c0;
    ``zero_introduced`` the reverse.
    """

    family: Family
    n: int
    lam: Fraction
    c0: ConstExpr
    shift: int
    zero_annihilated: bool
    zero_introduced: bool
    raw: RawEquation = field(compare=False)

    def __str__(self) -> str:
        return f"{self.family.symbol}_{self.n}(x) = {self.c0}"


@dataclass(frozen=True)
class Limits:
    max_abs_branch: int = 64
    max_abs_x: float | None = None

    def __post_init__(self):
        if self.max_abs_branch < 1:
            raise ValueError("max_abs_branch must be positive")
        if self.max_abs_x is not None and not self.max_abs_x > 0:
            raise ValueError("max_abs_x must be positive")


@dataclass(frozen=True)
class Solution:
    branch: int | None
    closed_form: ConstExpr
    value: float
    residual: float

    @property
    def tag(self) -> str:
        return str(self.closed_form)


@dataclass(frozen=True)
class SolutionSet:
    normal_form: EquationNormalForm
    solutions: tuple[Solution, ...]
    truncated: bool
    zero_caveat: str | None = None
    discarded: tuple[float, ...] = ()

    @property
    def values(self) -> list[float]:
        return [s.value for s in self.solutions]

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)


def _holds_at_zero(eq: RawEquation) -> bool:
    """Whether x = 0 satisfies the equation as written (False if undefined there)."""
    if any(t.power < 0 for t in eq.left):
        return False
    total = sum((t.coef * _AT_ZERO[t.factor] for t in eq.left if t.power == 0), Fraction(0))
    q = eq.right.as_fraction()
    return q is not None and q == total


def normalize(eq: RawEquation) -> EquationNormalForm:
    """Match ``eq`` to a row of the coefficient tables.

    >>> from invbessel.parser import parse_equation
    >>> str(normalize(parse_equation("cos(x) = x")))
    'y_0(x) = -1'
    """
    if not eq.left:
        raise NotTransformable("the equation has no x-dependent terms")
    factor_terms = [t for t in eq.left if t.factor != "one"]
    plain = [t for t in eq.left if t.factor == "one"]
    groups = {_GROUP[t.factor] for t in factor_terms}
    if not groups:
        raise NotTransformable("no cos, sin, cosh, sinh or exp(-x) factor present")
    if len(groups) > 1:
        raise MixedFactors("trigonometric, hyperbolic and exponential factors cannot be mixed")

    rhs = eq.right
    if plain:
        powers = {t.power for t in plain}
        if len(powers) > 1 or rhs.as_fraction() != 0:
            raise NotTransformable(
                "a constant and powers of x outside the factors cannot all be moved to one side",
                "only one bare power of x may appear, with nothing else on the right",
            )
        (k0,) = powers
        shift = -k0
        rhs = const(-sum(t.coef for t in plain))
    else:
        top = max(t.power for t in factor_terms)
        if rhs.as_fraction() == 0:
            shift = -1 - top
        else:
            shift = 0

    terms = {}
    for t in factor_terms:
        key = (t.power + shift, t.factor)
        terms[key] = terms.get(key, 0) + t.coef
    terms = {k: c for k, c in terms.items() if c}
    if not terms:
        raise NotTransformable("the factor terms cancel")
    top = max(p for p, _ in terms)
    if top != -1:
        hint = "every factor must carry a negative power of x, the highest being 1/x"
        raise NotTransformable(f"after the shift the highest power of x is {top}", hint)
    deepest = min(p for p, _ in terms)
    n = -deepest - 1
    carriers = {f for p, f in terms if p == deepest}
    if len(carriers) != 1:
        raise NotTransformable("two factors share the deepest power of x")
    (lead,) = carriers
    if lead == "cosh":
        raise NotTransformable("cosh carries the deepest power; no i_n row has that shape")
    family = _FAMILY_OF[lead]
    row = coefficients(family, n)
    pf, qf = (family.factors + (None,))[:2]
    lam = Fraction(row.pcoeffs[-1]) / terms[(deepest, lead)]
    expected = {}
    for ell, c in enumerate(row.pcoeffs, start=1):
        if c:
            expected[(-ell, pf)] = Fraction(c)
    for ell, c in enumerate(row.qcoeffs, start=1):
        if c:
            expected[(-ell, qf)] = Fraction(c)
    got = {k: lam * c for k, c in terms.items()}
    if got != expected:
        raise NotTransformable(
            f"the left side is not a multiple of {family.symbol}_{n}",
            f"would need to be proportional to {row}",
        )

    c0 = scale(lam, rhs)
    in_original = _holds_at_zero(eq)
    in_normal = family in (Family.J, Family.I) and c0.as_fraction() == (1 if n == 0 else 0)
    return EquationNormalForm(
        family=family,
        n=n,
        lam=lam,
        c0=c0,
        shift=shift,
        zero_annihilated=in_original and not in_normal,
        zero_introduced=in_normal and not in_original,
        raw=eq,
    )


def _relative_residual(eq: RawEquation, x: float) -> float:
    r = abs(eq.residual(x))
    s = eq.scale_of(x)
    return r / s if s > 0 else r


def solve(nf: EquationNormalForm, limits: Limits | None = None) -> SolutionSet:
    """All real solutions within ``limits``, each tagged inverse_b(f_n)(c0)."""
    limits = limits or Limits()
    c = nf.c0.value
    search = branches_containing(
        nf.family, nf.n, c, max_abs_branch=limits.max_abs_branch, max_abs_x=limits.max_abs_x
    )
    sols, dropped = [], []
    for b in search.branches:
        x = inverse(nf.family, nf.n, b, c)
        if limits.max_abs_x is not None and abs(x) > limits.max_abs_x:
            continue
        if x == 0.0 and nf.zero_introduced:
            dropped.append(x)
            continue
        if nf.raw.multiplier is not None:
            m = math.cos(x) if nf.raw.multiplier == "cos" else math.sin(x)
            if abs(m) < 1e-12:
                dropped.append(x)
                continue
        node: Inverse = inverse_node(nf.family, nf.n, b, nf.c0)
        sols.append(Solution(b, node, x, _relative_residual(nf.raw, x)))
    caveat = None
    if nf.zero_annihilated:
        caveat = "x = 0 also satisfies the equation as written; it is not a root of the normal form"
    elif nf.zero_introduced:
        caveat = "x = 0 solves the normal form only and has been discarded"
    return SolutionSet(nf, tuple(sols), search.truncated, caveat, tuple(dropped))


def solve_equation(text: str, limits: Limits | None = None) -> SolutionSet:
    """Parse, normalize and solve in one call.

    >>> [round(s.value, 5) for s in solve_equation("sin(x) = x/2")]
    [-1.89549, 1.89549]
    """
    return solve(normalize(parse_equation(text)), limits)
