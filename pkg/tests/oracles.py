"""Independent reference values built on exact rational arithmetic.

Nothing here calls into intervalkit's rounding code: binary64 rounding uses
CPython's correctly rounded ``int / int`` division plus neighbour stepping,
square roots use integer square roots on scaled rationals.
"""

import math
from fractions import Fraction

MAX = Fraction(1.7976931348623157e308)


def frac(x):
    return Fraction(x)


def round_down(r: Fraction) -> float:
    """Largest binary64 value <= r (possibly -inf)."""
    if r > MAX:
        return 1.7976931348623157e308
    if r < -MAX:
        return -math.inf
    f = r.numerator / r.denominator
    if Fraction(f) > r:
        f = math.nextafter(f, -math.inf)
    return f


def round_up(r: Fraction) -> float:
    return -round_down(-r)


def sqrt_down(a: Fraction) -> float:
    """Largest binary64 value whose square is <= a (a >= 0)."""
    if a == 0:
        return 0.0
    # floor(sqrt(a * 2**k)) with about 120 significant bits, k even
    k = 240 - (a.numerator.bit_length() - a.denominator.bit_length())
    k += k % 2
    scaled = (a.numerator << k) // a.denominator if k >= 0 else \
        a.numerator // (a.denominator << -k)
    s = math.isqrt(scaled)
    lo = Fraction(s) * Fraction(2) ** (-k // 2)  # lo <= sqrt(a), error far below an ulp
    f = round_down(lo)
    while Fraction(math.nextafter(f, math.inf)) ** 2 <= a:
        f = math.nextafter(f, math.inf)
    while Fraction(f) ** 2 > a:
        f = math.nextafter(f, -math.inf)
    return f


def sqrt_up(a: Fraction) -> float:
    f = sqrt_down(a)
    return f if Fraction(f) ** 2 == a else math.nextafter(f, math.inf)


def ulp(x: float) -> Fraction:
    """Gap from |x| to the next larger binary64 value."""
    x = abs(x)
    up = math.nextafter(x, math.inf)
    if up == math.inf:  # top binade: use the gap below
        return Fraction(x) - Fraction(math.nextafter(x, 0.0))
    return Fraction(up) - Fraction(x)


def brute_overlap(a, b):
    """The 16 states written out as endpoint conditions; exactly one must hold."""
    from intervalkit import OverlapState as S
    if a is None or b is None:
        return S.BOTH_EMPTY if a is None and b is None else \
            (S.FIRST_EMPTY if a is None else S.SECOND_EMPTY)
    a1, a2 = a
    b1, b2 = b
    table = {
        S.BEFORE: a2 < b1,
        S.MEETS: a1 < a2 == b1 < b2,
        S.OVERLAPS: a1 < b1 < a2 < b2,
        S.STARTS: a1 == b1 and a2 < b2,
        S.CONTAINED_BY: b1 < a1 and a2 < b2,
        S.FINISHES: b1 < a1 and a2 == b2,
        S.EQUALS: a1 == b1 and a2 == b2,
        S.FINISHED_BY: a1 < b1 and a2 == b2,
        S.CONTAINS: a1 < b1 and b2 < a2,
        S.STARTED_BY: a1 == b1 and b2 < a2,
        S.OVERLAPPED_BY: b1 < a1 < b2 < a2,
        S.MET_BY: b1 < b2 == a1 < a2,
        S.AFTER: b2 < a1,
    }
    held = [s for s, cond in table.items() if cond]
    assert len(held) == 1, (a, b, held)
    return held[0]


def round_bits(r: Fraction, prec: int, up: bool) -> Fraction:
    """Directed rounding of ``r`` to ``prec`` significant bits (unbounded exponent)."""
    if r == 0:
        return Fraction(0)
    if r < 0:
        return -round_bits(-r, prec, not up)
    e = r.numerator.bit_length() - r.denominator.bit_length()
    if Fraction(2) ** e > r:
        e -= 1
    scale = Fraction(2) ** (e - prec + 1)   # one unit in the last place
    q = r / scale
    m = q.numerator // q.denominator
    if up and m != q:
        m += 1
    return m * scale
