"""Lambert W on its two real branches, and its link to the inverse of k_0.

Since k_0(x) = e^{-x}/x, the equation w e^w = d is the same as k_0(w) = 1/d.
Hence W_0(d) = inverse_1(k_0)(1/d) for d > 0, W_0(d) = inverse_0(k_0)(1/d)
for -1/e <= d < 0, and W_{-1}(d) = inverse_{-1}(k_0)(1/d) for -1/e < d < 0.
"""

from __future__ import annotations

import enum
import math

from .errors import DomainError
from .inverses import inverse

__all__ = ["BRANCH_POINT", "WBranch", "inverse_k0_via_w", "lambert_w", "w_via_k0"]

BRANCH_POINT = -math.exp(-1.0)


class WBranch(enum.IntEnum):
    PRINCIPAL = 0
    MINUS_ONE = -1

    @classmethod
    def coerce(cls, value) -> "WBranch":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            key = value.strip().lower().replace("_", "").replace("-", "m")
            aliases = {"0": 0, "principal": 0, "w0": 0, "m1": -1, "minusone": -1, "w m1": -1}
            if key in aliases:
                return cls(aliases[key])
            raise ValueError(f"unknown Lambert W branch {value!r}")
        return cls(int(value))


def _check(branch: WBranch, d: float):
    if math.isnan(d):
        raise DomainError("d0 is NaN")
    if d < BRANCH_POINT:
        raise DomainError(f"W is not real for d0 = {d!r} < -1/e")
    if branch is WBranch.MINUS_ONE and d >= 0:
        raise DomainError(f"W_-1 is defined only on [-1/e, 0); got {d!r}")
    if branch is WBranch.PRINCIPAL and math.isinf(d):
        raise DomainError("d0 must be finite")


def _seed(branch: WBranch, d: float) -> float:
    q = 2.0 * (math.e * d + 1.0)
    if q < 0.6:
        # square-root expansion about the branch point
        p = math.sqrt(max(q, 0.0))
        if branch is WBranch.MINUS_ONE:
            p = -p
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    if branch is WBranch.PRINCIPAL:
        if d < 3.0:
            return math.log1p(d) * (1.0 - math.log1p(math.log1p(d)) / (2.0 + math.log1p(d)))
        l1 = math.log(d)
        l2 = math.log(l1)
        return l1 - l2 + l2 / l1
    l1 = math.log(-d)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def lambert_w(branch, d0: float) -> float:
    """Real solution w of w*exp(w) = d0 on the given branch.

    Halley iteration from a branch-specific seed; for d0 > 1e8 Newton's method
    is applied to w + log(w) = log(d0) instead, which cannot overflow.

    >>> lambert_w(0, 1.0)
    0.5671432904097838
    """
    branch = WBranch.coerce(branch)
    d = float(d0)
    _check(branch, d)
    if d == 0.0:
        return 0.0
    if d == BRANCH_POINT:
        return -1.0
    w = _seed(branch, d)
    if d > 1e8:
        ld = math.log(d)
        for _ in range(50):
            step = (w + math.log(w) - ld) / (1.0 + 1.0 / w)
            w -= step
            if abs(step) <= 4e-16 * abs(w):
                break
        return w
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - d
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if abs(step) <= 4e-16 * max(abs(w), 1e-300):
            break
    return w


def w_via_k0(branch, d0: float) -> float:
    """W_b(d0) computed as a real inverse of k_0 evaluated at 1/d0."""
    branch = WBranch.coerce(branch)
    d = float(d0)
    _check(branch, d)
    if d == 0.0:
        return 0.0
    if d == BRANCH_POINT:
        return -1.0
    if branch is WBranch.MINUS_ONE:
        b = -1
    else:
        b = 1 if d > 0 else 0
    return inverse("K", 0, b, 1.0 / d)


def inverse_k0_via_w(b: int, c0: float) -> float:
    """inverse_b(k_0)(c0) computed as W(1/c0): the identity read the other way."""
    c = float(c0)
    if c == 0 or math.isnan(c):
        raise DomainError("c0 must be nonzero")
    if b == 1:
        if c <= 0:
            raise DomainError("branch 1 of k_0 attains only positive values")
        return lambert_w(0, 1.0 / c)
    if b in (0, -1):
        if c > -math.e:
            raise DomainError("branches 0 and -1 of k_0 attain only values <= -e")
        return lambert_w(0 if b == 0 else -1, 1.0 / c)
    raise DomainError(f"k_0 has no branch {b}")
