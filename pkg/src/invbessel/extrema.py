"""Local infima and suprema ("infsupums") and the monotonic branches they bound.

Numbering: the infsupum with the least positive abscissa is ``m = 1``, those
further right are 2, 3, ... and those to its left 0, -1, ...  A pole at the
origin (y_n, k_n) occupies its slot in that sequence.  Branch ``b`` is the
maximal monotonic interval ``[x_{b-1}, x_b)``: its left endpoint belongs to it,
its right endpoint belongs to the next branch.

Where a family has only finitely many branches, the outermost endpoints are
``-inf``/``+inf`` records of kind ``"boundary"``.  :func:`infsupum` hides those
unless asked.

Stationary points of y_n and j_n on x > 0 are found by scanning the exact
derivative for sign changes with step pi/8 and refining each bracket with
Brent's method; the negative side follows from parity.
"""

from __future__ import annotations

import bisect
import math
import threading
from dataclasses import dataclass

import mpmath
from scipy.optimize import brentq

from .errors import NoSuchBranch, NoSuchExtremum
from .laurent import Family, _check_order, coefficients, derivative, evaluate, evaluate_mp

__all__ = [
    "BranchInterval",
    "ExtremumRecord",
    "branch_interval",
    "branch_of",
    "branch_range",
    "infsupum",
    "refine_abscissa_mp",
]

SCAN_STEP = math.pi / 8
_RTOL = 4 * 2.220446049250313e-16


@dataclass(frozen=True)
class ExtremumRecord:
    """One infsupum of f_n.

    For ``kind == "pole"`` the abscissa is 0, ``ordinate`` is NaN (undirected,
    complex infinity) and ``ordinate_above`` / ``ordinate_below`` hold the
    one-sided limits for x -> 0+ and x -> 0-.  For ``kind == "boundary"`` the
    abscissa is infinite and ``ordinate`` is the limit of f_n there.
    """

    family: Family
    n: int
    m: int
    abscissa: float
    ordinate: float
    kind: str = "stationary"
    ordinate_above: float | None = None
    ordinate_below: float | None = None

    def directional(self, direction: str) -> float:
        if self.kind != "pole":
            return self.ordinate
        key = direction.lower()
        if key in ("above", "fromabove"):
            return self.ordinate_above
        if key in ("below", "frombelow"):
            return self.ordinate_below
        raise ValueError(f"direction must be 'above' or 'below', got {direction!r}")


@dataclass(frozen=True)
class BranchInterval:
    """A maximal interval of monotonicity and the ordinates it attains.

    ``lo``/``hi`` is the attained ordinate range; the ``*_closed`` flags say
    whether each end is attained.
    """

    family: Family
    n: int
    b: int
    left: float
    right: float
    left_closed: bool
    right_closed: bool
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool
    increasing: bool
    left_kind: str
    right_kind: str

    def contains_abscissa(self, x: float) -> bool:
        lo_ok = x >= self.left if self.left_closed else x > self.left
        hi_ok = x <= self.right if self.right_closed else x < self.right
        return lo_ok and hi_ok

    def contains_ordinate(self, c: float) -> bool:
        """Membership under the half-open convention (each value in one branch)."""
        lo_ok = c >= self.lo if self.lo_closed else c > self.lo
        hi_ok = c <= self.hi if self.hi_closed else c < self.hi
        return lo_ok and hi_ok

    def ordinate_closure_contains(self, c: float) -> bool:
        """Membership including finite stationary endpoints on either side."""
        if self.contains_ordinate(c):
            return True
        return (c == self.left_ordinate and self.left_kind == "stationary") or (
            c == self.right_ordinate and self.right_kind == "stationary"
        )

    @property
    def left_ordinate(self) -> float:
        return self.hi if self.increasing is False else self.lo

    @property
    def right_ordinate(self) -> float:
        return self.lo if self.increasing is False else self.hi

    def describe(self) -> str:
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        ob = "[" if self.lo_closed else "("
        oc = "]" if self.hi_closed else ")"
        trend = "increasing" if self.increasing else "decreasing"
        return (
            f"branch {self.b} of {self.family.symbol}_{self.n}: x in {lb}{self.left:.6g}, {self.right:.6g}{rb}, "
            f"{trend}, ordinates {ob}{self.lo:.6g}, {self.hi:.6g}{oc}"
        )


# ---------------------------------------------------------------------------
# positive stationary points of y_n, j_n


class _PositiveStationary:
    """Lazily extended, sorted list of stationary abscissas on x > 0."""

    def __init__(self, fam: Family, n: int):
        self.fam = fam
        self.n = n
        self.points: list[float] = []
        self._x = 0.0
        self._sign = self._initial_sign()
        self._lock = threading.Lock()

    def _initial_sign(self):
        if self.fam is Family.Y:
            # f ~ c/x^(n+1) near 0+, so f' ~ -(n+1) c / x^(n+2)
            return -1 if coefficients(self.fam, self.n).pcoeffs[-1] > 0 else 1
        return -1 if self.n == 0 else 1

    def _fprime(self, x):
        return derivative(self.fam, self.n, x)

    def _scan_once(self):
        lo = self._x
        x = lo + SCAN_STEP
        s = math.copysign(1, d) if (d := self._fprime(x)) != 0 else 0
        if s and s != self._sign:
            a = lo
            if a == 0.0:
                # find a point near 0+ that still has the limiting sign
                a = x / 2
                while math.copysign(1, self._fprime(a)) != self._sign:
                    a /= 2
                    if a < 1e-300:
                        raise RuntimeError("could not isolate stationary point near the origin")
            root = brentq(self._fprime, a, x, xtol=1e-300, rtol=_RTOL, maxiter=500)
            self.points.append(root)
            self._sign = s
        self._x = x

    def get(self, k: int) -> float:
        """k-th positive stationary abscissa (k >= 1)."""
        with self._lock:
            while len(self.points) < k:
                self._scan_once()
            return self.points[k - 1]

    def count_below(self, x: float, strict: bool = False) -> int:
        """Number of stationary abscissas s with s <= x (s < x if strict)."""
        with self._lock:
            while self._x < x + SCAN_STEP:
                self._scan_once()
            return bisect.bisect_left(self.points, x) if strict else bisect.bisect_right(self.points, x)


_scanners: dict[tuple[Family, int], _PositiveStationary] = {}
_scanners_lock = threading.Lock()


def _scanner(fam, n) -> _PositiveStationary:
    key = (fam, n)
    sc = _scanners.get(key)
    if sc is None:
        with _scanners_lock:
            sc = _scanners.setdefault(key, _PositiveStationary(fam, n))
    return sc


# ---------------------------------------------------------------------------
# K even: the single negative-axis maximum


_k_max_cache: dict[int, float] = {}


def _k_negative_max(n: int) -> float:
    if n in _k_max_cache:
        return _k_max_cache[n]

    def fp(x):
        return derivative(Family.K, n, x)

    # f' > 0 far to the left (k_n ~ e^-x / x), f' < 0 just left of the pole
    a = -1.0
    while fp(a) <= 0:
        a *= 2
        if a < -1e6:
            raise RuntimeError("failed to bracket the k_n maximum")
    b = -1.0
    while fp(b) >= 0:
        b /= 2
    root = brentq(fp, a, b, xtol=1e-300, rtol=_RTOL, maxiter=500)
    _k_max_cache[n] = root
    return root


# ---------------------------------------------------------------------------
# the record sequence


def branch_range(family, n: int) -> tuple[float, float]:
    """Smallest and largest branch index (infinite for y_n, j_n)."""
    fam = Family.coerce(family)
    n = _check_order(n)
    if fam in (Family.Y, Family.J):
        return -math.inf, math.inf
    if fam is Family.I:
        return (1, 1) if n % 2 else (0, 1)
    return (0, 1) if n % 2 else (-1, 1)


def _pole_record(fam, n, m):
    return ExtremumRecord(
        fam,
        n,
        m,
        0.0,
        math.nan,
        "pole",
        evaluate(fam, n, 0.0, direction="above"),
        evaluate(fam, n, 0.0, direction="below"),
    )


def _stationary(fam, n, m, x):
    return ExtremumRecord(fam, n, m, x, evaluate(fam, n, x), "stationary")


def _boundary(fam, n, m, side):
    x = math.copysign(math.inf, side)
    if fam is Family.K:
        y = 0.0 if side > 0 else -math.inf
    elif fam is Family.I:
        y = math.inf if (side > 0 or n % 2 == 0) else -math.inf
    else:  # pragma: no cover - y_n, j_n have no boundary records
        y = 0.0
    return ExtremumRecord(fam, n, m, x, y, "boundary")


def _record(fam: Family, n: int, m: int) -> ExtremumRecord:
    """Record m including boundary records; raises NoSuchExtremum."""
    if fam in (Family.Y, Family.J):
        sc = _scanner(fam, n)
        if m >= 1:
            return _stationary(fam, n, m, sc.get(m))
        if fam is Family.Y:
            if m == 0:
                return _pole_record(fam, n, 0)
            return _stationary(fam, n, m, -sc.get(-m))
        if n % 2 == 0:
            if m == 0:
                return ExtremumRecord(fam, n, 0, 0.0, evaluate(fam, n, 0.0), "stationary")
            return _stationary(fam, n, m, -sc.get(-m))
        return _stationary(fam, n, m, -sc.get(1 - m))
    lo, hi = branch_range(fam, n)
    if m == hi:
        return _boundary(fam, n, m, 1)
    if m == lo - 1:
        return _boundary(fam, n, m, -1)
    if fam is Family.I and n % 2 == 0 and m == 0:
        return ExtremumRecord(fam, n, 0, 0.0, evaluate(fam, n, 0.0), "stationary")
    if fam is Family.K:
        if m == 0:
            return _pole_record(fam, n, 0)
        if m == -1 and n % 2 == 0:
            return _stationary(fam, n, -1, _k_negative_max(n))
    raise NoSuchExtremum(f"{fam.symbol}_{n} has no infsupum number {m}")


def infsupum(family, n: int, m: int, *, include_boundaries: bool = False) -> ExtremumRecord:
    """The m-th local infimum/supremum (or pole) of f_n.

    >>> r = infsupum("Y", 0, 1)
    >>> round(r.abscissa, 5), round(r.ordinate, 6)
    (2.79839, 0.336508)
    """
    fam = Family.coerce(family)
    n = _check_order(n)
    m = int(m)
    rec = _record(fam, n, m)
    if rec.kind == "boundary" and not include_boundaries:
        raise NoSuchExtremum(f"{fam.symbol}_{n} has no infsupum number {m} (only the limit at {rec.abscissa})")
    return rec


def branch_interval(family, n: int, b: int) -> BranchInterval:
    """Abscissa interval and ordinate range of branch b of f_n."""
    fam = Family.coerce(family)
    n = _check_order(n)
    b = int(b)
    lo_b, hi_b = branch_range(fam, n)
    if not lo_b <= b <= hi_b:
        raise NoSuchBranch(f"{fam.symbol}_{n} has no real branch {b} (branches {lo_b}..{hi_b})")
    left = _record(fam, n, b - 1)
    right = _record(fam, n, b)
    return _make_interval(fam, n, b, left, right)


def _make_interval(fam, n, b, left, right):
    if left.kind == "pole":
        yl = left.ordinate_above
    else:
        yl = left.ordinate
    if right.kind == "pole":
        yr = right.ordinate_below
    else:
        yr = right.ordinate
    left_closed = left.kind == "stationary"
    # the right end is attained only by the rightmost branch, which here
    # always runs to +inf
    right_closed = False
    increasing = yr > yl
    if increasing:
        lo, hi, lo_closed, hi_closed = yl, yr, left_closed, right_closed
    else:
        lo, hi, lo_closed, hi_closed = yr, yl, right_closed, left_closed
    return BranchInterval(
        fam, n, b, left.abscissa, right.abscissa, left_closed, right_closed,
        lo, hi, lo_closed and math.isfinite(lo), hi_closed and math.isfinite(hi),
        increasing, left.kind, right.kind,
    )


def branch_of(family, n: int, x: float) -> int:
    """Index of the branch whose abscissa interval contains x."""
    fam = Family.coerce(family)
    n = _check_order(n)
    x = float(x)
    if fam.has_pole and x == 0.0:
        raise NoSuchBranch(f"x = 0 is the pole of {fam.symbol}_{n} and lies in no branch")
    if fam in (Family.Y, Family.J):
        sc = _scanner(fam, n)
        if x >= 0:
            return 1 + sc.count_below(x)
        below = sc.count_below(-x, strict=True)
        return 1 - below if (fam is Family.J and n % 2) else -below
    lo, hi = branch_range(fam, n)
    for b in range(int(lo), int(hi) + 1):
        if branch_interval(fam, n, b).contains_abscissa(x):
            return b
    raise NoSuchBranch(f"no branch of {fam.symbol}_{n} contains x = {x}")  # pragma: no cover


def refine_abscissa_mp(family, n: int, m: int, dps: int = 32):
    """Stationary abscissa of record m recomputed with mpmath at ``dps`` digits."""
    rec = infsupum(family, n, m)
    if rec.kind != "stationary" or rec.abscissa == 0.0:
        return mpmath.mpf(rec.abscissa)
    fam = Family.coerce(family)
    with mpmath.workdps(dps):
        x0 = mpmath.mpf(rec.abscissa)
        h = abs(x0) * mpmath.mpf(10) ** -10
        return mpmath.findroot(
            lambda t: evaluate_mp(fam, n, t, deriv=1, dps=dps),
            (x0 - h, x0 + h),
            solver="anderson",
        )
