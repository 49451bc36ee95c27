"""Exact Laurent coefficient rows and real evaluation of y_n, j_n, i_n, k_n.

Every spherical Bessel function of integer order n >= 0 is a strict Laurent
polynomial in x times an elementary factor, plus (except for k_n) a second
strict Laurent polynomial times a co-factor::

    y_n(x) = P(1/x) cos x  + Q(1/x) sin x
    j_n(x) = P(1/x) sin x  + Q(1/x) cos x
    i_n(x) = P(1/x) sinh x + Q(1/x) cosh x
    k_n(x) = P(1/x) exp(-x)

P has degree n+1 and Q degree n, both with integer coefficients and no
constant term.  The integer rows are generated exactly and turned into binary64
only when a function value is requested.

k_n follows the normalization ``k_0(x) = exp(-x)/x``.  The DLMF convention is
larger by the factor :data:`DLMF_K_FACTOR` (pi/2).
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import PoleError

__all__ = [
    "DLMF_K_FACTOR",
    "EvalOptions",
    "Family",
    "LaurentForm",
    "coefficients",
    "derivative",
    "envelope",
    "envelope_coefficients",
    "evaluate",
    "evaluate_mp",
    "rayleigh_coefficients",
]

#: Multiply a k_n value of this package by this to get the DLMF k_n.
DLMF_K_FACTOR = math.pi / 2


class Family(str, enum.Enum):
    """Which spherical Bessel function.  Compares equal to its one-letter tag."""

    Y = "Y"
    J = "J"
    I = "I"  # noqa: E741
    K = "K"

    @classmethod
    def coerce(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"unknown family {value!r}; expected one of Y, J, I, K") from None

    @property
    def factors(self) -> tuple[str, ...]:
        """Names of the dominant factor and (if any) the co-factor."""
        return _FACTORS[self]

    @property
    def has_pole(self) -> bool:
        return self in (Family.Y, Family.K)

    @property
    def symbol(self) -> str:
        return self.value.lower()

    def __str__(self) -> str:
        return self.value


_FACTORS = {
    Family.Y: ("cos", "sin"),
    Family.J: ("sin", "cos"),
    Family.I: ("sinh", "cosh"),
    Family.K: ("exp",),
}


@dataclass(frozen=True)
class LaurentForm:
    """Integer coefficient row of one family and order.

    ``pcoeffs[l-1]`` multiplies ``x**-l`` on the dominant factor and
    ``qcoeffs[l-1]`` multiplies ``x**-l`` on the co-factor.  Forms returned by
    :meth:`derivative` have ``deriv > 0`` and are longer than a table row.
    """

    family: Family
    n: int
    pcoeffs: tuple[int, ...]
    qcoeffs: tuple[int, ...]
    deriv: int = 0

    def derivative(self) -> "LaurentForm":
        """Exact derivative with respect to x, again in Laurent-factor form."""
        dp = _diff_poly(self.pcoeffs)
        dq = _diff_poly(self.qcoeffs)
        p, q = self.pcoeffs, self.qcoeffs
        fam = self.family
        if fam is Family.Y:  # (P' + Q) cos + (Q' - P) sin
            newp, newq = _add(dp, q), _add(dq, _neg(p))
        elif fam is Family.J:  # (P' - Q) sin + (Q' + P) cos
            newp, newq = _add(dp, _neg(q)), _add(dq, p)
        elif fam is Family.I:  # (P' + Q) sinh + (Q' + P) cosh
            newp, newq = _add(dp, q), _add(dq, p)
        else:  # (P' - P) exp(-x)
            newp, newq = _add(dp, _neg(p)), ()
        return LaurentForm(fam, self.n, newp, newq, self.deriv + 1)

    def terms(self):
        """Yield ``(coefficient, power, factor)`` for every nonzero entry."""
        dom = self.family.factors[0]
        for ell, c in enumerate(self.pcoeffs, start=1):
            if c:
                yield c, -ell, dom
        if len(self.family.factors) > 1:
            co = self.family.factors[1]
            for ell, c in enumerate(self.qcoeffs, start=1):
                if c:
                    yield c, -ell, co

    def __str__(self) -> str:
        def poly(cs):
            parts = []
            for ell in range(len(cs), 0, -1):
                c = cs[ell - 1]
                if not c:
                    continue
                mag = f"{abs(c)}/x" + (f"^{ell}" if ell > 1 else "")
                parts.append(("- " if c < 0 else "+ ") + mag)
            if not parts:
                return "0"
            s = " ".join(parts)
            return s[2:] if s.startswith("+ ") else "-" + s[2:]

        chunks = [f"({poly(self.pcoeffs)})*{self.family.factors[0]}(x)"]
        if len(self.family.factors) > 1 and any(self.qcoeffs):
            chunks.append(f"({poly(self.qcoeffs)})*{self.family.factors[1]}(x)")
        body = " + ".join(chunks).replace("exp(x)", "exp(-x)")
        name = f"{self.family.symbol}_{self.n}"
        return f"{name}(x) = {body}" if not self.deriv else f"{name}{chr(39) * self.deriv}(x) = {body}"


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _diff_poly(cs):
    # d/dx c x^-l = -l c x^-(l+1); index l-1 -> l
    if not cs:
        return ()
    return (0,) + tuple(-ell * c for ell, c in enumerate(cs, start=1))


def _add(a, b):
    m = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m))


def _neg(a):
    return tuple(-c for c in a)


def _shift(a):
    """Multiply by 1/x."""
    return (0,) + tuple(a) if a else ()


# ---------------------------------------------------------------------------
# exact rows by the three-term recurrence

_SEEDS = {
    # (P0, Q0), (P1, Q1)
    Family.Y: (((-1,), ()), ((0, -1), (-1,))),
    Family.J: (((1,), ()), ((0, 1), (-1,))),
    Family.I: (((1,), ()), ((0, -1), (1,))),
    Family.K: (((1,), ()), ((1, 1), ())),
}

_rows: dict[Family, list[tuple[tuple[int, ...], tuple[int, ...]]]] = {f: list(_SEEDS[f]) for f in Family}
_rows_lock = threading.Lock()


def _next_row(fam, k, prev, cur):
    """Row k+1 from rows k-1 (prev) and k (cur)."""
    mult = 2 * k + 1
    sp = _shift(tuple(mult * c for c in cur[0]))
    sq = _shift(tuple(mult * c for c in cur[1]))
    if fam in (Family.Y, Family.J):  # f_{k+1} = (2k+1)/x f_k - f_{k-1}
        return _add(sp, _neg(prev[0])), _add(sq, _neg(prev[1]))
    if fam is Family.I:  # i_{k+1} = i_{k-1} - (2k+1)/x i_k
        return _add(prev[0], _neg(sp)), _add(prev[1], _neg(sq))
    # k_{k+1} = k_{k-1} + (2k+1)/x k_k
    return _add(prev[0], sp), ()


def coefficients(family, n: int) -> LaurentForm:
    """Exact integer row for ``family`` and order ``n``.

    >>> coefficients("K", 4).pcoeffs
    (1, 10, 45, 105, 105)
    """
    fam = Family.coerce(family)
    n = _check_order(n)
    rows = _rows[fam]
    if n >= len(rows):
        with _rows_lock:
            while len(rows) <= n:
                k = len(rows) - 1
                rows.append(_next_row(fam, k, rows[k - 1], rows[k]))
    p, q = rows[n]
    return LaurentForm(fam, n, p, q)


def _check_order(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"order must be a nonnegative integer, got {n!r}")
    return int(n)


# ---------------------------------------------------------------------------
# independent route: Rayleigh operator (1/x d/dx)^n applied symbolically

_DERIV = {
    "cos": (-1, "sin"),
    "sin": (1, "cos"),
    "cosh": (1, "sinh"),
    "sinh": (1, "cosh"),
    "exp": (-1, "exp"),  # exp here means exp(-x)
}

_RAYLEIGH = {
    # seed factor, sign of prefactor, sign inside (+-x)^n
    Family.Y: ("cos", -1, -1),
    Family.J: ("sin", 1, -1),
    Family.I: ("sinh", 1, 1),
    Family.K: ("exp", 1, -1),
}


def rayleigh_coefficients(family, n: int) -> LaurentForm:
    """Row computed from the Rayleigh formula rather than the recurrence.

    Starts from ``factor(x)/x``, applies ``(1/x d/dx)`` n times with exact
    rational arithmetic on a ``{(factor, power): coefficient}`` map, then
    multiplies by ``sign * (s x)**n``.
    """
    fam = Family.coerce(family)
    n = _check_order(n)
    seed, sign, inner = _RAYLEIGH[fam]
    expr = {(seed, 1): Fraction(1)}  # key power l means x**-l
    for _ in range(n):
        out: dict[tuple[str, int], Fraction] = {}
        for (fac, ell), c in expr.items():
            # d/dx (x^-l f) = -l x^-(l+1) f + x^-l f'; then times x^-1
            out[(fac, ell + 2)] = out.get((fac, ell + 2), 0) - ell * c
            s, g = _DERIV[fac]
            out[(g, ell + 1)] = out.get((g, ell + 1), 0) + s * c
        expr = {k: v for k, v in out.items() if v}
    scale = sign * inner**n
    dom, *rest = fam.factors
    p = [Fraction(0)] * (n + 1)
    q = [Fraction(0)] * n
    for (fac, ell), c in expr.items():
        ell -= n
        if ell < 1:
            raise AssertionError("Rayleigh expansion produced a nonnegative power")
        if fac == dom:
            p[ell - 1] += scale * c
        elif rest and fac == rest[0]:
            q[ell - 1] += scale * c
        else:
            raise AssertionError(f"unexpected factor {fac} in {fam} expansion")
    for c in p + q:
        if c.denominator != 1:
            raise AssertionError("non-integer Rayleigh coefficient")
    return LaurentForm(fam, n, _trim(int(c) for c in p), _trim(int(c) for c in q))


# ---------------------------------------------------------------------------
# binary64 evaluation


@dataclass(frozen=True)
class EvalOptions:
    """Controls the small-|x| series used for j_n and i_n.

    The series is used when ``|x| < near_zero_threshold * max(1, n)``, and
    for i_n also when ``|x| < n (n + 16) / 4``; at least ``series_terms``
    terms are summed.
    """

    near_zero_threshold: float = 0.5
    series_terms: int = 30

    def __post_init__(self):
        if not self.near_zero_threshold > 0:
            raise ValueError("near_zero_threshold must be positive")
        if self.series_terms < 8:
            raise ValueError("series_terms must be at least 8")


DEFAULT_OPTIONS = EvalOptions()


@lru_cache(maxsize=None)
def _float_form(fam: Family, n: int, deriv: int):
    form = coefficients(fam, n)
    for _ in range(deriv):
        form = form.derivative()
    return tuple(float(c) for c in form.pcoeffs), tuple(float(c) for c in form.qcoeffs)


def _horner(cs, u):
    """sum cs[i] * u**(i+1)."""
    acc = 0.0
    for c in reversed(cs):
        acc = acc * u + c
    return acc * u


def _factor_values(fam, x):
    if fam is Family.Y:
        return math.cos(x), math.sin(x)
    if fam is Family.J:
        return math.sin(x), math.cos(x)
    if fam is Family.I:
        return math.sinh(x), math.cosh(x)
    return math.exp(-x), 0.0


def _huge(fam, p, q, u, x):
    # sinh and cosh agree to 1e-35 past |x| = 40; combine polynomials before
    # scaling so that only a genuinely infinite result overflows
    if fam is Family.K:
        poly, logf = _horner(p, u), -x
    else:
        poly = math.copysign(1.0, x) * _horner(p, u) + (_horner(q, u) if q else 0.0)
        logf = abs(x) - math.log(2.0)
    if poly == 0.0:
        return 0.0
    if logf < 709.0:
        return math.exp(logf) * poly if fam is Family.K else math.exp(abs(x)) * 0.5 * poly
    t = logf + math.log(abs(poly))
    return math.copysign(math.exp(t) if t < 709.78 else math.inf, poly)


def _series_limit(fam, n, opts):
    limit = opts.near_zero_threshold * max(1, n)
    if fam is Family.I:
        # the i_n series has positive terms, so it stays accurate where the
        # Laurent form cancels (|x| below roughly n^2/4)
        limit = max(limit, n * (n + 16) / 4)
    return limit


def _series(fam, n, x, deriv, min_terms):
    """Maclaurin series of j_n (or i_n) or of its first derivative."""
    s = -0.5 if fam is Family.J else 0.5
    x2 = x * x
    # a_k = x^(n+2k) s^k / (k! (2n+2k+1)!!), built without overflow
    a = 1.0
    for j in range(1, n + 1):
        a *= x / (2 * j + 1)
    total = 0.0
    k = 0
    while True:
        term = (n + 2 * k) * a / x if deriv else a
        total += term
        if k >= min_terms and abs(term) <= 1e-17 * abs(total):
            break
        if k > 2000:
            break
        a *= s * x2 / ((k + 1) * (2 * n + 2 * k + 3))
        k += 1
        if a == 0.0:
            break
    return total


def _at_zero(fam, n, deriv, direction):
    if fam in (Family.J, Family.I):
        if deriv == 0:
            return 1.0 if n == 0 else 0.0
        return 1.0 / 3.0 if n == 1 else 0.0
    if direction is None:
        raise PoleError(f"{fam.symbol}_{n} has a pole of order {n + 1} at x = 0")
    return _pole_limit(fam, n, deriv, direction)


def _pole_limit(fam, n, deriv, direction):
    """Signed infinity of the k-th derivative as x -> 0 from the given side."""
    lead = coefficients(fam, n).pcoeffs[-1]
    order = n + 1 + deriv
    # d^k/dx^k x^-(n+1) = (-1)^k (n+1)...(n+k) x^-(n+1+k)
    sign = (1 if lead > 0 else -1) * (-1) ** deriv
    d = _direction(direction)
    if d < 0 and order % 2:
        sign = -sign
    return math.copysign(math.inf, sign)


def _direction(direction):
    key = str(direction).lower().replace("_", "").replace("-", "")
    if key in ("above", "fromabove", "+", "right", "plus"):
        return 1
    if key in ("below", "frombelow", "-", "left", "minus"):
        return -1
    raise ValueError(f"direction must be 'above' or 'below', got {direction!r}")


def _evaluate(fam, n, x, deriv, opts, direction):
    x = float(x)
    if x == 0.0:
        return _at_zero(fam, n, deriv, direction)
    if fam in (Family.J, Family.I) and abs(x) < _series_limit(fam, n, opts):
        return _series(fam, n, x, deriv, opts.series_terms)
    p, q = _float_form(fam, n, deriv)
    u = 1.0 / x
    if fam is Family.I and abs(x) > 40.0 or fam is Family.K and x < -700.0:
        return _huge(fam, p, q, u, x)
    a, b = _factor_values(fam, x)
    val = _horner(p, u) * a
    if q:
        val += _horner(q, u) * b
    return val


def evaluate(family, n: int, x: float, opts: EvalOptions | None = None, *, direction=None) -> float:
    """f_n(x) in binary64.

    At x = 0, j_n and i_n take their limiting values; y_n and k_n raise
    :class:`PoleError` unless ``direction`` is ``"above"`` (x -> 0+) or
    ``"below"`` (x -> 0-), in which case the signed infinity is returned.
    """
    return _evaluate(Family.coerce(family), _check_order(n), x, 0, opts or DEFAULT_OPTIONS, direction)


def derivative(family, n: int, x: float, opts: EvalOptions | None = None, *, direction=None) -> float:
    """f_n'(x) from the exactly differentiated Laurent form."""
    return _evaluate(Family.coerce(family), _check_order(n), x, 1, opts or DEFAULT_OPTIONS, direction)


def evaluate_mp(family, n: int, x, *, deriv: int = 0, dps: int = 30):
    """f_n(x) (or a derivative) as an mpmath number good to about ``dps`` digits.

    Near the origin j_n and i_n are evaluated with enough guard digits to
    absorb the cancellation between the two Laurent terms.
    """
    fam = Family.coerce(family)
    n = _check_order(n)
    with mpmath.workdps(dps + 10):
        x = mpmath.mpf(x)
        if x == 0:
            if deriv > 1 and not fam.has_pole:
                raise NotImplementedError("derivatives above the first at x = 0 are not provided")
            return mpmath.mpf(_at_zero(fam, n, deriv, None))
        guard = 10
        if fam in (Family.J, Family.I):
            ax = abs(x)
            guard += int((2 * n + 2 + deriv) * max(0.0, -float(mpmath.log10(ax)))) + int(
                math.lgamma(2 * n + 2) / math.log(10)
            ) + 5
        with mpmath.workdps(dps + guard):
            x = mpmath.mpf(x)
            form = coefficients(fam, n)
            for _ in range(deriv):
                form = form.derivative()
            u = 1 / x
            dom, *rest = fam.factors
            val = _mp_poly(form.pcoeffs, u) * _mp_factor(dom, x)
            if rest:
                val += _mp_poly(form.qcoeffs, u) * _mp_factor(rest[0], x)
        return +val


def _mp_poly(cs, u):
    acc = mpmath.mpf(0)
    for c in reversed(cs):
        acc = acc * u + c
    return acc * u


def _mp_factor(name, x):
    if name == "cos":
        return mpmath.cos(x)
    if name == "sin":
        return mpmath.sin(x)
    if name == "cosh":
        return mpmath.cosh(x)
    if name == "sinh":
        return mpmath.sinh(x)
    return mpmath.exp(-x)


# ---------------------------------------------------------------------------
# amplitude envelope for y_n / j_n


@lru_cache(maxsize=None)
def envelope_coefficients(family, n: int) -> tuple[int, ...]:
    """Integer coefficients ``e_k`` with ``P(u)**2 + Q(u)**2 = sum e_k u**k``.

    By Cauchy-Schwarz ``|f_n(x)| <= sqrt(P**2 + Q**2)`` for y_n and j_n.
    """
    fam = Family.coerce(family)
    if fam not in (Family.Y, Family.J):
        raise ValueError("the amplitude envelope is defined for Y and J only")
    form = coefficients(fam, n)
    out = [0] * (2 * n + 4)
    for cs in (form.pcoeffs, form.qcoeffs):
        for i, a in enumerate(cs, start=1):
            for j, b in enumerate(cs, start=1):
                out[i + j] += a * b
    return _trim(out)


def envelope(family, n: int, x: float) -> float:
    """Upper bound on ``|f_n(t)|`` valid at ``t = x``; decreasing in ``|x|``."""
    cs = envelope_coefficients(family, n)
    u = 1.0 / abs(float(x))
    acc = 0.0
    for c in reversed(cs):
        acc = acc * u + c
    return math.sqrt(acc)
