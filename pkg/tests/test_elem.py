import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

import oracles
from intervalkit.endpoint import to_fraction
from intervalkit import (
    BINARY64, Interval, acos, acosh, asin, atanh, bigfloat, cos, cosh, elem, exp, is_empty,
    is_entire, log, log2, log10, pi_interval, pow_interval, promote, sin, sinh, tan, wid,
)


def _ulps_from(v, target):
    """Distance between binary64 ``v`` and the mpmath value ``target`` in ulps of v."""
    return float(abs(mpmath.mpf(v) - target) / mpmath.mpf(float(oracles.ulp(v))))


def _mp(v):
    q = to_fraction(v)
    return mpmath.mpf(q.numerator) / q.denominator


def test_exact_points():
    e0 = exp(Interval(0.0))
    assert e0.lo <= 1 <= e0.hi and float(Fraction(e0.hi) - Fraction(e0.lo)) <= 2 * 2 ** -52
    l1 = log(Interval(1.0))
    assert l1.lo <= 0 <= l1.hi and wid(l1) <= 2 * 5e-324
    assert sin(Interval(0.0)) == Interval(0.0)
    assert cos(Interval(0.0, 7.0)) == Interval(-1.0, 1.0)


def test_exp_unit_interval():
    r = exp(Interval(0.0, 1.0))
    assert r.lo == 1.0
    with mpmath.workprec(200):
        e = mpmath.e
        assert mpmath.mpf(r.hi) >= e
        up = float(mpmath.fadd(e, 0, prec=53, rounding="c"))
        assert _ulps_from(r.hi, mpmath.mpf(up)) <= 2


def test_sin_decreasing_branch():
    r = sin(Interval(2.0, 3.0))
    with mpmath.workprec(200):
        lo, hi = mpmath.sin(3), mpmath.sin(2)
        assert mpmath.mpf(r.lo) <= lo and mpmath.mpf(r.hi) >= hi
        assert _ulps_from(r.lo, lo) <= 2 and _ulps_from(r.hi, hi) <= 2


def test_pow_vectors():
    r = pow_interval(Interval(4.0), Interval(0.5))
    assert r.lo <= 2 <= r.hi and float(Fraction(r.hi) - Fraction(r.lo)) <= 2 * 2 ** -51
    assert pow_interval(Interval(0.0, 1.0), Interval(2.0, 3.0)) == Interval(0.0, 1.0)
    r = pow_interval(Interval(2.0), Interval(10.0))
    assert r.lo <= 1024 <= r.hi and float(Fraction(r.hi) - Fraction(r.lo)) <= 2 * 2 ** -42
    assert is_empty(pow_interval(Interval(-2.0, -1.0), Interval(0.5)))


def test_domain_restrictions():
    assert is_empty(log(Interval(-2.0, -1.0)))
    assert log(Interval(0.0, 1.0)).lo == -math.inf
    assert is_empty(asin(Interval(2.0, 3.0)))
    assert acos(Interval(-1.0, 1.0)).hi >= math.pi
    assert is_empty(acosh(Interval(-1.0, 0.5)))
    assert atanh(Interval(-1.0, 1.0)) == Interval(-math.inf, math.inf)
    assert log2(Interval(8.0)).lo <= 3 <= log2(Interval(8.0)).hi
    assert log10(Interval(1000.0)).lo <= 3 <= log10(Interval(1000.0)).hi


def test_overflow_saturates():
    r = exp(Interval(1000.0))
    assert r.lo == 1.7976931348623157e308 and r.hi == math.inf
    assert exp(Interval(-math.inf, 0.0)).lo == 0.0
    assert sinh(Interval(-1e3, 1e3)) == Interval(-math.inf, math.inf)
    assert cosh(Interval(-1.0, 2.0)).lo == 1.0


@given(st.floats(-1e6, 1e6), st.floats(0, 10))
def test_sin_cos_clamped_to_unit_range(a, w):
    x = Interval(a, a + w)
    for fn in (sin, cos):
        r = fn(x)
        assert -1.0 <= r.lo <= r.hi <= 1.0


@given(st.integers(-10 ** 6, 10 ** 6), st.floats(1e-6, 1.0))
def test_extrema_are_reached(k, w):
    # a box straddling pi/2 + 2k pi must reach exactly 1
    with mpmath.workprec(120):
        peak = float(mpmath.pi / 2 + 2 * k * mpmath.pi)
    r = sin(Interval(peak - w, peak + w))
    assert r.hi == 1.0
    r = cos(Interval(peak - math.pi / 2 - w, peak - math.pi / 2 + w))
    assert r.hi == 1.0


def test_tan_pole_gives_entire():
    assert is_entire(tan(Interval(1.5, 1.6)))
    assert is_entire(tan(Interval(-1.6, -1.5)))
    assert not is_entire(tan(Interval(1.5, 1.57)))
    assert is_entire(tan(Interval(0.0, 4.0)))


def test_pi_interval():
    p = pi_interval(BINARY64)
    assert (p.lo, p.hi) == (math.pi, math.nextafter(math.pi, 4))
    f = bigfloat(300)
    q = pi_interval(f)
    with mpmath.workprec(400):
        assert _mp(q.lo) < mpmath.pi < _mp(q.hi)
    assert q.hi == f.next_up(q.lo)


@pytest.mark.parametrize("name,arg", [("exp", "[1/3,1/3]"), ("sin", "[1e10,1e10]"),
                                      ("atan", "[7,7]"), ("log", "[2,2]")])
def test_bigfloat_spot_check(name, arg):
    f = bigfloat(256)
    r = getattr(elem, name)(Interval(arg, f))
    lo, hi = to_fraction(r.lo), to_fraction(r.hi)
    with mpmath.workprec(600):
        truth = getattr(mpmath, name)(_mp(Interval(arg, f).lo))
        assert _mp(r.lo) <= truth <= _mp(r.hi)
        assert (hi - lo) / abs(lo) < Fraction(2) ** -250
    # narrowing to binary64 gives the usual double enclosure
    b = promote(r, BINARY64)
    assert b.lo <= float(truth) <= b.hi
