import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invbessel import (
    InverseQuery,
    NoFixedPoint,
    NoSuchBranch,
    OutOfRange,
    branch_interval,
    branches_containing,
    evaluate,
    fixed_point_check,
    fixed_points,
    infsupum,
    inverse,
    inverse_mp,
)
from invbessel.extrema import branch_range
from oracles import dottie_by_iteration, sign_change_roots

DOTTIE = 0.739085133215160642


def test_dottie():
    assert inverse("Y", 0, 1, -1.0) == pytest.approx(DOTTIE, rel=1e-15)
    assert inverse("Y", 0, 1, -1.0) == pytest.approx(dottie_by_iteration(), rel=1e-15)


def test_dottie_high_precision():
    x = inverse_mp("Y", 0, 1, -1, dps=30)
    assert mpmath.nstr(x, 25) == "0.7390851332151606416553121"


def test_half_ordinate_of_j0():
    assert inverse("J", 0, 1, 0.5) == pytest.approx(1.89549, abs=5e-6)
    assert inverse("J", 0, 0, 0.5) == pytest.approx(-1.89549, abs=5e-6)


def test_first_zero_of_j1():
    assert inverse("J", 1, 2, 0.0) == pytest.approx(4.49341, abs=5e-6)


def test_closed_endpoint_is_attained():
    top = infsupum("Y", 0, 1)
    assert inverse("Y", 0, 1, top.ordinate) == top.abscissa
    assert inverse("Y", 0, 2, top.ordinate) == top.abscissa


def test_errors():
    with pytest.raises(OutOfRange) as info:
        inverse("Y", 0, 1, 0.5)
    assert "ordinate range" in str(info.value)
    assert info.value.hi == pytest.approx(0.336508, abs=5e-7)
    with pytest.raises(NoSuchBranch):
        inverse("I", 1, 0, 1.0)
    with pytest.raises(OutOfRange):
        # the open limit at infinity is not attained
        inverse("K", 0, 1, 0.0)
    with pytest.raises(ValueError):
        InverseQuery("Y", 0, 1, -1.0, tol=1e-3)


def test_query_object():
    assert InverseQuery("y", 0, 1, -1.0).run() == pytest.approx(DOTTIE, rel=1e-15)


def _interior_ordinates(iv, count, rng):
    lo, hi = iv.lo, iv.hi
    if math.isinf(lo) and math.isinf(hi):
        return [rng.uniform(-50, 50) for _ in range(count)]
    if math.isinf(lo):
        return [hi - 10 ** rng.uniform(-6, 3) for _ in range(count)]
    if math.isinf(hi):
        return [lo + 10 ** rng.uniform(-6, 3) for _ in range(count)]
    return [lo + (hi - lo) * rng.uniform(1e-6, 1 - 1e-6) for _ in range(count)]


def all_branches(fam, n, window=8):
    lo, hi = branch_range(fam, n)
    return range(max(int(lo) if math.isfinite(lo) else -window, -window), min(int(hi) if math.isfinite(hi) else window, window) + 1)


@pytest.mark.parametrize("family", ["Y", "J", "I", "K"])
def test_round_trip_ordinates(family):
    rng = random.Random(1)
    for n in range(6):
        for b in all_branches(family, n):
            iv = branch_interval(family, n, b)
            for c0 in _interior_ordinates(iv, 20, rng):
                x = inverse(family, n, b, c0)
                assert iv.contains_abscissa(x)
                assert abs(evaluate(family, n, x) - c0) <= 1e-12 * max(1, abs(c0)), (family, n, b, c0)


@pytest.mark.parametrize("family", ["Y", "J", "I", "K"])
def test_round_trip_abscissas(family):
    rng = random.Random(2)
    for n in range(6):
        for b in all_branches(family, n):
            iv = branch_interval(family, n, b)
            left = iv.left if math.isfinite(iv.left) else min(iv.right, 0.0) - 30
            right = iv.right if math.isfinite(iv.right) else max(left, 0.0) + 30
            for _ in range(10):
                x = rng.uniform(left, right)
                if not iv.contains_abscissa(x) or x == iv.left:
                    continue
                # stay away from the flat stationary ends, where the inverse is ill-conditioned
                if min(abs(x - iv.left), abs(x - iv.right)) < 1e-2 * (right - left):
                    continue
                y = evaluate(family, n, x)
                if not math.isfinite(y):
                    continue
                assert inverse(family, n, b, y) == pytest.approx(x, rel=1e-10, abs=1e-12), (family, n, b, x)


@settings(max_examples=150, deadline=None)
@given(
    n=st.integers(0, 4),
    b=st.integers(-5, 5),
    u=st.floats(0.001, 0.999),
    v=st.floats(0.001, 0.999),
    fam=st.sampled_from(["Y", "J"]),
)
def test_monotone_in_ordinate(n, b, u, v, fam):
    try:
        iv = branch_interval(fam, n, b)
    except NoSuchBranch:
        return
    lo = iv.lo if math.isfinite(iv.lo) else iv.hi - 20
    hi = iv.hi if math.isfinite(iv.hi) else iv.lo + 20
    c, d = sorted((lo + (hi - lo) * u, lo + (hi - lo) * v))
    if c == d:
        return
    xc, xd = inverse(fam, n, b, c), inverse(fam, n, b, d)
    assert (xd >= xc) if iv.increasing else (xd <= xc)


def test_branches_containing_examples():
    r = branches_containing("Y", 0, -1.0, max_abs_branch=64)
    assert r.branches == [1] and not r.truncated
    assert branches_containing("J", 0, 0.5).branches == [0, 1]
    c0 = 3 / (3 * math.log(2) - math.pi)
    assert branches_containing("K", 2, c0).branches == [-1, 0]
    r = branches_containing("J", 0, 0.0, max_abs_branch=4)
    assert r.truncated and r.branches == list(range(-4, 5))


def test_branches_containing_agrees_with_scan():
    for fam, n, c0 in (("Y", 0, 0.1), ("J", 1, -0.05), ("Y", 2, 0.02), ("J", 3, 0.04)):
        r = branches_containing(fam, n, c0, max_abs_x=30.0)
        roots = [inverse(fam, n, b, c0) for b in r.branches]
        roots = [x for x in roots if abs(x) <= 30]
        skip = (0.0,) if fam == "Y" else ()
        scan = sign_change_roots(lambda x: evaluate(fam, n, x) - c0, -30, 30, step=1e-2, skip=skip)
        assert len(roots) == len(scan)
        for a, z in zip(sorted(roots), scan):
            assert a == pytest.approx(z, abs=1e-9)


def test_fixed_points():
    # the Dottie number is the fixed point of cos (and arccos), not of y_0
    assert math.acos(DOTTIE) == pytest.approx(DOTTIE, rel=1e-15)
    with pytest.raises(NoFixedPoint):
        fixed_point_check("Y", 0, 1)
    assert fixed_point_check("J", 0, 1) == pytest.approx(0.876726, abs=5e-7)
    # sinh(x)/x = x has two positive roots
    assert fixed_points("I", 0, 1) == pytest.approx([1.31328, 2.63925], abs=5e-6)
    for x in fixed_points("I", 0, 1):
        assert math.sinh(x) == pytest.approx(x * x, rel=1e-13)
        assert inverse("I", 0, 1, x) == pytest.approx(x, rel=1e-13)
    with pytest.raises(NoFixedPoint):
        fixed_point_check("Y", 0, 0)
