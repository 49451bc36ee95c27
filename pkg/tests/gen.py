"""Random equation generators shared by the solver tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from invbessel import coefficients


def row_terms(family: str, n: int):
    """(coef, power, factor) triples of f_n written out as a sum."""
    row = coefficients(family, n)
    pf, qf = {"Y": ("cos", "sin"), "J": ("sin", "cos")}[family]
    out = [(Fraction(c), -ell, pf) for ell, c in enumerate(row.pcoeffs, start=1) if c]
    out += [(Fraction(c), -ell, qf) for ell, c in enumerate(row.qcoeffs, start=1) if c]
    return out


def term_text(terms) -> str:
    parts = []
    for c, p, f in terms:
        xs = "" if p == 0 else (f"*x^{p}" if p > 0 else f"/x^{-p}")
        body = "1" if f == "one" else f"{f}(x)"
        parts.append(f"({c})*{body}{xs}")
    return " + ".join(parts)


def random_yj_equation(rng: random.Random):
    """A disguised Y/J row equation: lam * x^k * (f_n(x) - c0) = 0, or lam*f_n = lam*c0.

    Returns (text, terms, rhs, family, n, c0) where ``terms``/``rhs`` describe the
    equation as written, for an oracle that never sees the normal form.
    """
    family = rng.choice("YJ")
    n = rng.randint(0, 3)
    while True:
        c0 = Fraction(rng.randint(-9, 9), rng.randint(1, 90))
        # j_0 = 1 touches at x = 0 without crossing; a sign scan cannot see it
        if c0 != 0 and not (family == "J" and n == 0 and c0 == 1):
            break
    lam = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 5))
    k = rng.randint(0, n + 1)
    terms = [(lam * c, p + k, f) for c, p, f in row_terms(family, n)]
    if k == 0:
        rhs = lam * c0
    else:
        terms.append((-lam * c0, k, "one"))
        rhs = Fraction(0)
    rng.shuffle(terms)
    return f"{term_text(terms)} = {rhs}", terms, rhs, family, n, c0


def random_truths(count: int, seed: int = 12345):
    """(family, n, b, c0, 16-digit rendering) for inverse_b(f_n)(p/q), q <= 6."""
    import mpmath

    from invbessel import branch_interval
    from invbessel.extrema import branch_range
    from invbessel.inverses import inverse_mp

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        fam = rng.choice("YJIK")
        n = rng.randint(0, 2)
        lo, hi = branch_range(fam, n)
        b = rng.randint(max(-3, lo), min(3, hi))
        c = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        iv = branch_interval(fam, n, b)
        if not iv.contains_ordinate(float(c)):
            continue
        if iv.left_kind == "stationary" and float(c) == iv.left_ordinate:
            continue
        x = inverse_mp(fam, n, b, mpmath.mpf(c.numerator) / c.denominator, dps=30)
        if x == 0:
            # zero input carries no significant digits
            continue
        out.append((fam, n, b, c, mpmath.nstr(x, 16, strip_zeros=False)))
    return out


def self_recognition(count: int = 50, seed: int = 12345):
    """(hits, failures) of recognize() ranking the generating truth first with margin >= 8."""
    from invbessel import recognize
    from invbessel.constexpr import const

    hits, fails = 0, []
    for fam, n, b, c, text in random_truths(count, seed):
        ranked = recognize(text)
        top = ranked[0] if ranked else None
        good = (
            top is not None
            and (top.family.value, top.n, top.b) == (fam, n, b)
            and top.c0 == const(c)
            and top.margin >= 8
        )
        if good:
            hits += 1
        else:
            fails.append((fam, n, b, c, text, [(str(k), round(k.margin, 2)) for k in ranked[:3]]))
    return hits, fails
