"""Real multi-branch inverses inverse_b(f_n)(c0).

``inverse("Y", 0, 1, -1.0)`` is the Dottie number: the unique x in branch 1 of
y_0 with y_0(x) = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath
from scipy.optimize import brentq

from .errors import BracketDiverged, DomainError, NoFixedPoint, OutOfRange
from .extrema import BranchInterval, branch_interval, branch_range
from .laurent import Family, _check_order, evaluate, evaluate_mp

__all__ = [
    "BranchSearch",
    "InverseQuery",
    "branches_containing",
    "fixed_point_check",
    "fixed_points",
    "inverse",
    "inverse_mp",
]

_RTOL = 4 * 2.220446049250313e-16
MAX_DOUBLINGS = 100


@dataclass(frozen=True)
class InverseQuery:
    family: Family
    n: int
    b: int
    c0: float
    tol: float = 1e-14

    def __post_init__(self):
        object.__setattr__(self, "family", Family.coerce(self.family))
        _check_order(self.n)
        if not 0 < self.tol <= 1e-6:
            raise ValueError("tol must lie in (0, 1e-6]")

    def run(self) -> float:
        return inverse(self.family, self.n, self.b, self.c0, tol=self.tol)


def _anchor(iv: BranchInterval) -> float:
    """A finite interior point for branches with no finite stationary end."""
    if math.isinf(iv.left) and math.isinf(iv.right):
        return 0.0
    if iv.left == 0.0:
        return 1.0
    return -1.0


def _march(g, start, toward, sign_at_start):
    """Step from ``start`` toward ``toward`` (0 or +-inf) until g changes sign."""
    if math.isinf(toward):
        step = math.copysign(max(1.0, abs(start)), toward)
        for k in range(MAX_DOUBLINGS):
            x = start + step * 2.0**k
            v = g(x)
            if v == 0 or math.copysign(1, v) != sign_at_start:
                return x
    else:
        for k in range(1, MAX_DOUBLINGS + 1):
            x = toward + (start - toward) / 2.0**k
            v = g(x)
            if v == 0 or math.copysign(1, v) != sign_at_start:
                return x
    raise BracketDiverged(f"no sign change within 2**{MAX_DOUBLINGS} of {start}")


def _bracket(g, iv: BranchInterval):
    left_ok = iv.left_kind == "stationary"
    right_ok = iv.right_kind == "stationary"
    if left_ok and right_ok:
        return iv.left, iv.right
    if left_ok or right_ok:
        start = iv.left if left_ok else iv.right
        toward = iv.right if left_ok else iv.left
        other = _march(g, start, toward, math.copysign(1, g(start)))
        return (start, other) if left_ok else (other, start)
    start = _anchor(iv)
    gs = g(start)
    if gs == 0:
        return start, start
    # monotone: the root lies on the side where g moves toward zero
    go_right = (gs < 0) == iv.increasing
    other = _march(g, start, iv.right if go_right else iv.left, math.copysign(1, gs))
    return (start, other) if go_right else (other, start)


def inverse(family, n: int, b: int, c0: float, *, tol: float = 1e-14) -> float:
    """The x in branch ``b`` of f_n with f_n(x) = c0.

    ``c0`` must lie in the branch's ordinate range.  A value equal to the
    ordinate of a finite stationary endpoint returns that endpoint, including
    the right endpoint that otherwise belongs to the next branch.

    >>> round(inverse("J", 1, 2, 0.0), 5)
    4.49341
    """
    if not 0 < tol <= 1e-6:
        raise ValueError("tol must lie in (0, 1e-6]")
    fam = Family.coerce(family)
    iv = branch_interval(fam, n, b)
    c0 = float(c0)
    if math.isnan(c0):
        raise DomainError("c0 is NaN")
    if not iv.ordinate_closure_contains(c0):
        lb = "[" if iv.lo_closed else "("
        rb = "]" if iv.hi_closed else ")"
        raise OutOfRange(
            f"{c0!r} is outside the ordinate range {lb}{iv.lo!r}, {iv.hi!r}{rb} of branch {b} of {fam.symbol}_{n}",
            iv.lo,
            iv.hi,
        )
    if iv.left_kind == "stationary" and c0 == iv.left_ordinate:
        return iv.left
    if iv.right_kind == "stationary" and c0 == iv.right_ordinate:
        return iv.right

    def g(x):
        return evaluate(fam, n, x) - c0

    a, z = _bracket(g, iv)
    if a == z:
        return a
    ga, gz = g(a), g(z)
    if ga == 0:
        return a
    if gz == 0:
        return z
    return brentq(g, a, z, xtol=1e-300, rtol=_RTOL, maxiter=500)


def inverse_mp(family, n: int, b: int, c0, *, dps: int = 30, x0: float | None = None):
    """inverse_b(f_n)(c0) to about ``dps`` digits.

    ``c0`` may be any mpmath-convertible value (pass a high-precision value for
    an irrational target).  The binary64 root seeds Newton's method on the exact
    derivative; if Newton stalls the root is re-bracketed and bisected.
    """
    fam = Family.coerce(family)
    if x0 is None:
        x0 = inverse(fam, n, b, float(c0))
    with mpmath.workdps(dps + 10):
        c = mpmath.mpf(c0)
        x = mpmath.mpf(x0)
        eps = mpmath.mpf(10) ** (-dps - 3)
        for _ in range(60):
            fx = evaluate_mp(fam, n, x, dps=dps + 10) - c
            if fx == 0:
                return +x
            d = evaluate_mp(fam, n, x, deriv=1, dps=dps + 10)
            if d == 0:
                break
            step = fx / d
            if abs(step) > 1e-6 * max(1, abs(x)):
                break
            x -= step
            if abs(step) <= eps * max(1, abs(x)):
                return +x
        return _bisect_mp(fam, n, c, mpmath.mpf(x0), dps)


def _bisect_mp(fam, n, c, x0, dps):
    def g(t):
        return evaluate_mp(fam, n, t, dps=dps + 10) - c

    h = max(abs(x0), 1) * mpmath.mpf(2) ** -40
    a, z = x0 - h, x0 + h
    ga, gz = g(a), g(z)
    while ga * gz > 0 and h < 1e-3 * max(1, abs(x0)):
        h *= 4
        a, z = x0 - h, x0 + h
        ga, gz = g(a), g(z)
    if ga * gz > 0:
        return x0  # extremum target: the binary64 value is the best available
    tol = mpmath.mpf(10) ** (-dps - 3) * max(1, abs(x0))
    while z - a > tol:
        mid = (a + z) / 2
        gm = g(mid)
        if gm == 0:
            return mid
        if (gm > 0) == (ga > 0):
            a, ga = mid, gm
        else:
            z = mid
    return (a + z) / 2


class BranchSearch(NamedTuple):
    """Branches whose ordinate range holds c0, and whether more lie beyond the limits."""

    branches: list[int]
    truncated: bool


def branches_containing(
    family, n: int, c0: float, *, max_abs_branch: int = 64, max_abs_x: float | None = None
) -> BranchSearch:
    """All branches b (within the limits) with c0 in their half-open ordinate range.

    For y_n and j_n the search runs outward from the origin over
    ``|b| <= max_abs_branch`` and, if given, over branches meeting
    ``[-max_abs_x, max_abs_x]``.  ``truncated`` is set when c0 = 0 or when the
    first excluded branch on either side also holds c0 (extremum magnitudes
    shrink outward, so no farther branch can hold c0 otherwise).
    """
    fam = Family.coerce(family)
    n = _check_order(n)
    c0 = float(c0)
    lo, hi = branch_range(fam, n)
    if math.isfinite(lo):
        found = [b for b in range(int(lo), int(hi) + 1) if branch_interval(fam, n, b).contains_ordinate(c0)]
        return BranchSearch(found, False)

    xmax = math.inf if max_abs_x is None else float(max_abs_x)
    found = []
    b = 1
    while True:
        iv = branch_interval(fam, n, b)
        if b > max_abs_branch or iv.left > xmax:
            stop_right = iv
            break
        if iv.contains_ordinate(c0):
            found.append(b)
        b += 1
    b = 0
    while True:
        iv = branch_interval(fam, n, b)
        if -b > max_abs_branch or iv.right < -xmax:
            stop_left = iv
            break
        if iv.contains_ordinate(c0):
            found.append(b)
        b -= 1
    truncated = c0 == 0 or stop_right.contains_ordinate(c0) or stop_left.contains_ordinate(c0)
    return BranchSearch(sorted(found), truncated)


def fixed_points(family, n: int, b: int) -> list[float]:
    """All solutions of f_n(x) = x inside branch b, ascending."""
    fam = Family.coerce(family)
    iv = branch_interval(fam, n, b)

    def g(x):
        return evaluate(fam, n, x) - x

    pts = []
    if iv.left_kind == "stationary":
        pts.append(iv.left)
    if iv.right_kind == "stationary":
        pts.append(iv.right)
    if not pts:
        pts.append(_anchor(iv))
    for end in (iv.left, iv.right):
        if iv.left_kind == "stationary" and end == iv.left or iv.right_kind == "stationary" and end == iv.right:
            continue
        base = pts[0] if end == iv.left else pts[-1]
        if math.isinf(end):
            pts.extend(base + math.copysign(max(1.0, abs(base)), end) * 2.0**k for k in range(11))
        else:
            pts.extend(end + (base - end) / 2.0**k for k in range(1, 60))
    pts = sorted(p for p in set(pts) if iv.contains_abscissa(p) or p == iv.right)
    grid = []
    for a, z in zip(pts, pts[1:]):
        grid.extend(a + (z - a) * i / 32 for i in range(32))
    grid.append(pts[-1])
    roots = []
    prev_x, prev_v = None, None
    for x in grid:
        v = g(x)
        if not math.isfinite(v):
            prev_x, prev_v = None, None
            continue
        if v == 0 and iv.contains_abscissa(x):
            roots.append(x)
        elif prev_v is not None and prev_v != 0 and (v > 0) != (prev_v > 0):
            roots.append(brentq(g, prev_x, x, xtol=1e-300, rtol=_RTOL))
        prev_x, prev_v = x, v
    return sorted(r for r in set(roots) if iv.contains_abscissa(r))


def fixed_point_check(family, n: int, b: int) -> float:
    """Least x in branch b with f_n(x) = x, hence inverse_b(f_n)(x) = x."""
    fam = Family.coerce(family)
    roots = fixed_points(fam, n, b)
    if not roots:
        raise NoFixedPoint(f"branch {b} of {fam.symbol}_{n} has no fixed point")
    return roots[0]
