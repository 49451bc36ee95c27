import math

import mpmath
import numpy as np
import pytest

from invbessel import NoSuchBranch, NoSuchExtremum, branch_interval, branch_of, derivative, evaluate, infsupum
from invbessel.extrema import branch_range, refine_abscissa_mp

Y0_TABLE = {-2: (-6.12125, 0.161228), -1: (-2.79839, -0.336508), 1: (2.79839, 0.336508), 2: (6.12125, -0.161228)}
J0_TABLE = {
    -2: (-7.72525, 0.128375),
    -1: (-4.49341, -0.217234),
    0: (0.0, 1.0),
    1: (4.49341, -0.217234),
    2: (7.72525, 0.128375),
}


def half_unit_6th_digit(v):
    return 0.5 * 10 ** (math.floor(math.log10(abs(v))) - 5) if v else 5e-6


@pytest.mark.parametrize("family, table", [("Y", Y0_TABLE), ("J", J0_TABLE)])
def test_tabulated_records(family, table):
    for m, (x, y) in table.items():
        r = infsupum(family, 0, m)
        assert abs(r.abscissa - x) <= half_unit_6th_digit(x), m
        assert abs(r.ordinate - y) <= half_unit_6th_digit(y), m


def test_pole_record():
    r = infsupum("Y", 0, 0)
    assert r.kind == "pole" and r.abscissa == 0.0 and math.isnan(r.ordinate)
    assert r.directional("above") == -math.inf
    assert r.directional("FromBelow") == math.inf


def test_k_records():
    r = infsupum("K", 2, -1)
    assert r.abscissa == pytest.approx(-1.78324, abs=5e-6)
    assert r.ordinate == pytest.approx(-0.870999, abs=5e-7)
    assert infsupum("K", 3, 0).kind == "pole"
    with pytest.raises(NoSuchExtremum):
        infsupum("K", 3, -1)
    with pytest.raises(NoSuchExtremum):
        infsupum("K", 0, 1)
    assert infsupum("K", 0, 1, include_boundaries=True).kind == "boundary"


def test_i_records():
    assert infsupum("I", 0, 0).ordinate == 1.0
    assert infsupum("I", 2, 0).ordinate == 0.0
    with pytest.raises(NoSuchExtremum):
        infsupum("I", 1, 0)


def test_branch_examples():
    iv = branch_interval("Y", 0, 1)
    assert iv.left == 0.0 and iv.right == pytest.approx(2.79839, abs=5e-6)
    assert iv.lo == -math.inf and iv.hi == pytest.approx(0.336508, abs=5e-7)
    iv = branch_interval("K", 0, 1)
    assert (iv.left, iv.right, iv.lo, iv.hi, iv.increasing) == (0.0, math.inf, 0.0, math.inf, False)
    iv = branch_interval("I", 1, 1)
    assert (iv.left, iv.right) == (-math.inf, math.inf)


def test_branch_counts():
    assert branch_range("I", 1) == (1, 1)
    assert branch_range("I", 4) == (0, 1)
    assert branch_range("K", 3) == (0, 1)
    assert branch_range("K", 2) == (-1, 1)
    for fam, n, b in (("I", 1, 0), ("I", 2, 2), ("K", 1, -1), ("K", 2, 2)):
        with pytest.raises(NoSuchBranch):
            branch_interval(fam, n, b)


@pytest.mark.parametrize("family", ["Y", "J"])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 5])
def test_abscissas_increase_and_sign_test(family, n):
    xs = [infsupum(family, n, m).abscissa for m in range(-6, 7) if not (family == "Y" and m == 0)]
    assert all(a < b for a, b in zip(xs, xs[1:]))
    for x in xs:
        if x == 0.0:
            continue
        h = 1e-4
        assert derivative(family, n, x - h) * derivative(family, n, x + h) < 0


@pytest.mark.parametrize("family", ["Y", "J"])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_asymptotic_spacing(family, n):
    for m in range(10, 21):
        gap = infsupum(family, n, m + 1).abscissa - infsupum(family, n, m).abscissa
        assert abs(gap - math.pi) < 0.05
        gap = infsupum(family, n, -m).abscissa - infsupum(family, n, -m - 1).abscissa
        assert abs(gap - math.pi) < 0.05


def test_stationary_derivative_small():
    for fam in ("Y", "J"):
        for n in range(4):
            for m in (1, 2, 5, -3):
                r = infsupum(fam, n, m)
                if r.kind != "stationary" or r.abscissa == 0:
                    continue
                scale = max(abs(derivative(fam, n, r.abscissa + 0.1)), abs(derivative(fam, n, r.abscissa - 0.1)))
                assert abs(derivative(fam, n, r.abscissa)) <= 1e-13 * max(scale, 1e-300) * 10


def test_refinement_stable_at_double_precision():
    for fam, n, m in (("Y", 0, 1), ("J", 0, -2), ("Y", 3, 4), ("J", 2, 7), ("K", 2, -1)):
        x = infsupum(fam, n, m).abscissa
        hi = refine_abscissa_mp(fam, n, m, dps=32)
        assert abs(mpmath.mpf(x) - hi) <= 1e-12 * abs(hi)


@pytest.mark.parametrize("family, n", [("Y", 0), ("Y", 3), ("J", 0), ("J", 1), ("J", 4), ("I", 0), ("I", 2), ("I", 3), ("K", 0), ("K", 1), ("K", 2)])
def test_coverage_and_monotonicity(family, n):
    lo, hi = branch_range(family, n)
    lo = max(lo, -6)
    hi = min(hi, 6)
    ivs = [branch_interval(family, n, b) for b in range(int(lo), int(hi) + 1)]
    for a, b in zip(ivs, ivs[1:]):
        assert a.right == b.left
    for iv in ivs:
        left = iv.left if math.isfinite(iv.left) else min(iv.right, 0.0) - 20
        right = iv.right if math.isfinite(iv.right) else max(left, 0.0) + 20
        xs = np.linspace(left, right, 402)[1:-1]
        xs = [x for x in xs if x != 0.0]
        signs = {derivative(family, n, float(x)) > 0 for x in xs}
        assert signs == {iv.increasing}, iv.describe()


def test_ordinate_ranges_attained():
    iv = branch_interval("J", 0, 1)
    assert iv.contains_ordinate(1.0) and not iv.contains_ordinate(infsupum("J", 0, 1).ordinate)
    assert iv.ordinate_closure_contains(infsupum("J", 0, 1).ordinate)
    assert iv.lo_closed is False and iv.hi_closed is True


def test_branch_of():
    assert branch_of("Y", 0, 0.739) == 1
    assert branch_of("Y", 0, 2.79839 + 1e-3) == 2
    assert branch_of("Y", 0, -1.0) == 0
    assert branch_of("J", 0, 0.0) == 1
    assert branch_of("J", 0, -1.0) == 0
    assert branch_of("J", 1, 0.0) == 1
    assert branch_of("J", 1, -4.0) == 0
    assert branch_of("K", 2, -3.0) == -1
    assert branch_of("K", 2, -1.0) == 0
    assert branch_of("I", 1, -50.0) == 1
    with pytest.raises(NoSuchBranch):
        branch_of("Y", 1, 0.0)
    for fam, n in (("Y", 2), ("J", 3), ("K", 2), ("I", 2)):
        for x in (-9.3, -2.2, -0.4, 0.3, 1.9, 8.8):
            iv = branch_interval(fam, n, branch_of(fam, n, x))
            assert iv.contains_abscissa(x)
    assert evaluate("J", 0, infsupum("J", 0, 2).abscissa) > 0 > evaluate("J", 0, infsupum("J", 0, 3).abscissa)
