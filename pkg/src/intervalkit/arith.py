"""Interval arithmetic: basic operations, fma, powers, extended division,
cancellation and reverse functions.

Every function accepts intervals of one common endpoint format; bare numbers
are turned into point intervals of the other operand's format.  Results are
the tightest enclosures the format allows, except where noted.
"""

from __future__ import annotations

import math

from .endpoint import DOWN, UP, _iroot, as_dyadic, bigfloat, infsign, to_fraction
from .interval import (
    Interval, coerce_pair, empty, entire, hull, intersection, point,
)

__all__ = [
    "add", "sub", "neg", "mul", "div", "div_to_pair", "fma", "sqr", "sqrt", "pown", "pow",
    "abs_", "cancel_minus", "cancel_plus",
    "sqr_rev", "abs_rev", "pown_rev", "mul_rev", "sin_rev", "cos_rev", "tan_rev", "cosh_rev",
]

_new = Interval._new


def _one(x):
    return x if isinstance(x, Interval) else point(x, _default_fmt())


def _default_fmt():
    from .endpoint import BINARY64
    return BINARY64


# -- basic operations -----------------------------------------------------------------


def neg(x):
    x = _one(x)
    if x.lo is None:
        return x
    return _new(-x.hi, -x.lo, x.fmt)


def add(x, y):
    x, y = coerce_pair(x, y)
    f = x.fmt
    if x.lo is None or y.lo is None:
        return empty(f)
    return _new(f.add(x.lo, y.lo, DOWN), f.add(x.hi, y.hi, UP), f)


def sub(x, y):
    x, y = coerce_pair(x, y)
    f = x.fmt
    if x.lo is None or y.lo is None:
        return empty(f)
    return _new(f.sub(x.lo, y.hi, DOWN), f.sub(x.hi, y.lo, UP), f)


def _mul_corners(a, b, c, d):
    """Corner pairs giving the lower and upper bound of ``[a,b]*[c,d]``.

    Neither interval may be ``[0,0]``.  The returned pairs never multiply a
    zero by an infinity.
    """
    if a >= 0:
        if c >= 0:
            return [(a, c)], [(b, d)]
        if d <= 0:
            return [(b, c)], [(a, d)]
        return [(b, c)], [(b, d)]
    if b <= 0:
        if c >= 0:
            return [(a, d)], [(b, c)]
        if d <= 0:
            return [(b, d)], [(a, c)]
        return [(a, d)], [(a, c)]
    if c >= 0:
        return [(a, d)], [(b, d)]
    if d <= 0:
        return [(b, c)], [(a, c)]
    return [(a, d), (b, c)], [(a, c), (b, d)]


def _is_zero(x):
    return x.lo == 0 and x.hi == 0


def mul(x, y):
    x, y = coerce_pair(x, y)
    f = x.fmt
    if x.lo is None or y.lo is None:
        return empty(f)
    if _is_zero(x) or _is_zero(y):
        return _new(f.zero, f.zero, f)
    lows, highs = _mul_corners(x.lo, x.hi, y.lo, y.hi)
    lo = min(f.mul(p, q, DOWN) for p, q in lows) if len(lows) > 1 else f.mul(*lows[0], DOWN)
    hi = max(f.mul(p, q, UP) for p, q in highs) if len(highs) > 1 else f.mul(*highs[0], UP)
    return _new(lo, hi, f)


def div(x, y):
    """Hull of ``{a/b : a in x, b in y, b != 0}``; never raises."""
    x, y = coerce_pair(x, y)
    f = x.fmt
    if x.lo is None or y.lo is None or _is_zero(y):
        return empty(f)
    a, b, c, d = x.lo, x.hi, y.lo, y.hi
    if c > 0:
        if a >= 0:
            return _new(f.div(a, d, DOWN), f.div(b, c, UP), f)
        if b <= 0:
            return _new(f.div(a, c, DOWN), f.div(b, d, UP), f)
        return _new(f.div(a, c, DOWN), f.div(b, c, UP), f)
    if d < 0:
        if a >= 0:
            return _new(f.div(b, d, DOWN), f.div(a, c, UP), f)
        if b <= 0:
            return _new(f.div(b, c, DOWN), f.div(a, d, UP), f)
        return _new(f.div(b, d, DOWN), f.div(a, d, UP), f)
    # 0 lies in y
    if a == 0 and b == 0:
        return _new(f.zero, f.zero, f)
    if c < 0 < d:
        return entire(f)
    if c == 0:
        if b <= 0:
            return _new(f.neg_inf, f.div(b, d, UP), f)
        if a >= 0:
            return _new(f.div(a, d, DOWN), f.pos_inf, f)
        return entire(f)
    # d == 0
    if b <= 0:
        return _new(f.div(b, c, DOWN), f.pos_inf, f)
    if a >= 0:
        return _new(f.neg_inf, f.div(a, c, UP), f)
    return entire(f)


def div_to_pair(x, y):
    """Division returning up to two disjoint pieces; the second may be Empty.

    Only a divisor with zero strictly inside and a dividend bounded away
    from zero produces two pieces.
    """
    x, y = coerce_pair(x, y)
    f = x.fmt
    if x.lo is None or y.lo is None or _is_zero(y):
        return empty(f), empty(f)
    a, b, c, d = x.lo, x.hi, y.lo, y.hi
    if c < 0 < d:
        if b < 0:
            return (_new(f.neg_inf, f.div(b, d, UP), f),
                    _new(f.div(b, c, DOWN), f.pos_inf, f))
        if a > 0:
            return (_new(f.neg_inf, f.div(a, c, UP), f),
                    _new(f.div(a, d, DOWN), f.pos_inf, f))
    return div(x, y), empty(f)


def fma(x, y, z):
    """Enclosure of ``{a*b + c}`` with one rounding per endpoint."""
    x, y = coerce_pair(x, y)
    x, z = coerce_pair(x, z)
    f = x.fmt
    if x.lo is None or y.lo is None or z.lo is None:
        return empty(f)
    if _is_zero(x) or _is_zero(y):
        return z
    lows, highs = _mul_corners(x.lo, x.hi, y.lo, y.hi)
    lo = min(f.fma(p, q, z.lo, DOWN) for p, q in lows)
    hi = max(f.fma(p, q, z.hi, UP) for p, q in highs)
    return _new(lo, hi, f)


def abs_(x):
    x = _one(x)
    if x.lo is None or x.lo >= 0:
        return x
    if x.hi <= 0:
        return neg(x)
    f = x.fmt
    return _new(f.zero, -x.lo if -x.lo >= x.hi else x.hi, f)


# -- powers -------------------------------------------------------------------------


_EXACT_POWER_LIMIT = 1024


def _pow_dir(f, a, n, rnd):
    """Directed ``a**n`` for integer ``n >= 1``; exact rounding for moderate ``n``.

    Larger exponents use repeated squaring with directed rounding in a wider
    format, which is valid but may be an ulp loose.
    """
    if n <= _EXACT_POWER_LIMIT or infsign(a) or a == 0:
        return f.pow_int(a, n, rnd)
    negative = a < 0 and n & 1
    if negative:
        rnd = rnd.flip()
    w = bigfloat(f.precision + 64)
    base = w.convert(abs(a), rnd)
    acc = w.one
    while n:
        if n & 1:
            acc = w.mul(acc, base, rnd)
        n >>= 1
        if n:
            base = w.mul(base, base, rnd)
    r = f.convert(acc, rnd)
    return -r if negative else r


def _recip_pow_dir(f, a, n, rnd):
    """Directed ``a**-n`` for ``n >= 1`` and ``a != 0``."""
    s = infsign(a)
    if s:
        return f.zero
    if n <= _EXACT_POWER_LIMIT:
        return f.pow_int(a, -n, rnd)
    negative = a < 0 and n & 1
    if negative:
        rnd = rnd.flip()
    w = bigfloat(f.precision + 64)
    p = _pow_dir(w, w.convert(abs(a), rnd.flip()), n, rnd.flip())
    r = f.convert(w.div(w.one, p, rnd), rnd)
    return -r if negative else r


def sqr(x):
    """Image of ``t**2`` (tighter than ``x*x`` when 0 is inside)."""
    return pown(x, 2)


def sqrt(x):
    x = intersection(_one(x), _nonneg(_one(x).fmt))
    if x.lo is None:
        return x
    f = x.fmt
    return _new(f.sqrt(x.lo, DOWN), f.sqrt(x.hi, UP), f)


def _nonneg(f):
    return _new(f.zero, f.pos_inf, f)


def pown(x, p):
    """``x**p`` for an integer ``p``, using parity and monotonicity."""
    x = _one(x)
    p = int(p)
    f = x.fmt
    if x.lo is None:
        return x
    if p == 0:
        return _new(f.one, f.one, f)
    if p == 1:
        return x
    lo, hi = x.lo, x.hi
    if p > 0:
        if p & 1 or lo >= 0:
            return _new(_pow_dir(f, lo, p, DOWN), _pow_dir(f, hi, p, UP), f)
        if hi <= 0:
            return _new(_pow_dir(f, hi, p, DOWN), _pow_dir(f, lo, p, UP), f)
        top = lo if -lo >= hi else hi
        return _new(f.zero, _pow_dir(f, top, p, UP), f)
    q = -p
    if lo == 0 and hi == 0:
        return empty(f)
    if lo >= 0:
        up = f.pos_inf if lo == 0 else _recip_pow_dir(f, lo, q, UP)
        return _new(_recip_pow_dir(f, hi, q, DOWN), up, f)
    if hi <= 0:
        if q & 1:
            down = f.neg_inf if hi == 0 else _recip_pow_dir(f, hi, q, DOWN)
            return _new(down, _recip_pow_dir(f, lo, q, UP), f)
        up = f.pos_inf if hi == 0 else _recip_pow_dir(f, hi, q, UP)
        return _new(_recip_pow_dir(f, lo, q, DOWN), up, f)
    # zero strictly inside
    if q & 1:
        return entire(f)
    far = lo if -lo >= hi else hi
    return _new(_recip_pow_dir(f, far, q, DOWN), f.pos_inf, f)


def pow(x, y):
    """``x**y`` over ``x ∩ [0, inf)``; see :func:`intervalkit.elem.pow_interval`."""
    from .elem import pow_interval
    return pow_interval(x, y)


# -- cancellation ---------------------------------------------------------------------


def cancel_minus(x, y):
    """Tightest ``z`` with ``y + z ⊇ x``; Entire when no such bounded ``z`` exists."""
    x, y = coerce_pair(x, y)
    f = x.fmt
    bounded_y = y.lo is None or not (infsign(y.lo) or infsign(y.hi))
    if x.lo is None and bounded_y:
        return empty(f)
    if x.lo is None or y.lo is None:
        return entire(f)
    if infsign(x.lo) or infsign(x.hi) or not bounded_y:
        return entire(f)
    # compare widths exactly: wid(x) < wid(y) means no solution
    xl, xh = as_dyadic(x.lo), as_dyadic(x.hi)
    yl, yh = as_dyadic(y.lo), as_dyadic(y.hi)
    e = min(xl[1], xh[1], yl[1], yh[1])
    wx = (xh[0] << (xh[1] - e)) - (xl[0] << (xl[1] - e))
    wy = (yh[0] << (yh[1] - e)) - (yl[0] << (yl[1] - e))
    if wx < wy:
        return entire(f)
    return _new(f.sub(x.lo, y.lo, DOWN), f.sub(x.hi, y.hi, UP), f)


def cancel_plus(x, y):
    return cancel_minus(x, neg(y))


# -- reverse functions ---------------------------------------------------------------------


def _rev_args(c, x0):
    c = _one(c)
    if x0 is None:
        x0 = entire(c.fmt)
    return coerce_pair(c, x0)


def _sym_hull(u, x0):
    """Hull of ``(±u) ∩ x0`` for a nonnegative interval ``u``."""
    if u.lo is None:
        return empty(x0.fmt)
    return hull(intersection(neg(u), x0), intersection(u, x0))


def sqr_rev(c, x0=None):
    """Enclosure of ``{x in x0 : x**2 in c}``."""
    return pown_rev(c, x0, 2)


def abs_rev(c, x0=None):
    c, x0 = _rev_args(c, x0)
    return _sym_hull(intersection(c, _nonneg(c.fmt)), x0)


def _recip_root(f, y, n, rnd):
    """Directed ``y ** (-1/n)`` for ``y >= 0`` (``0 -> inf``, ``inf -> 0``)."""
    if infsign(y):
        return f.zero
    if y == 0:
        return f.pos_inf
    m, e = as_dyadic(y)
    # z * 2**k = (2**(n*k - e) / m) ** (1/n) with enough bits in the root
    bits = (-e - m.bit_length()) // n
    k = f.precision + 4 - bits
    sh = n * k - e
    if sh < 0:
        k += -(sh // n) + 1
        sh = n * k - e
    num, rem = divmod(1 << sh, m)
    r = _iroot(num, n)
    exact = rem == 0 and r ** n == num
    return f._round(r, -k, rnd, sticky=not exact)[0]


def pown_rev(c, x0=None, p=2):
    """Enclosure of ``{x in x0 : x**p in c}`` for an integer ``p``."""
    c, x0 = _rev_args(c, x0)
    f = c.fmt
    p = int(p)
    if c.lo is None or x0.lo is None:
        return empty(f)
    if p == 0:
        return x0 if c.lo <= 1 <= c.hi else empty(f)
    if p > 0:
        if p & 1:
            lo = f.root_int(c.lo, p, DOWN) if c.lo >= 0 else -f.root_int(-c.lo, p, UP)
            hi = f.root_int(c.hi, p, UP) if c.hi >= 0 else -f.root_int(-c.hi, p, DOWN)
            return intersection(_new(lo, hi, f), x0)
        c = intersection(c, _nonneg(f))
        if c.lo is None:
            return c
        u = _new(f.root_int(c.lo, p, DOWN), f.root_int(c.hi, p, UP), f)
        return _sym_hull(u, x0)
    q = -p
    pos = intersection(c, _nonneg(f))
    pieces = []
    if pos.lo is not None and pos.hi > 0:
        u = _new(_recip_root(f, pos.hi, q, DOWN), _recip_root(f, pos.lo, q, UP), f)
        if q & 1:
            pieces.append(intersection(u, x0))
        else:
            pieces.append(_sym_hull(u, x0))
    if q & 1 and c.lo < 0:
        nh = c.hi if c.hi < 0 else f.zero
        pieces.append(intersection(
            _new(-_recip_root(f, -nh, q, UP), -_recip_root(f, -c.lo, q, DOWN), f), x0))
    return hull(*pieces) if pieces else empty(f)


def mul_rev(b, c, x0=None):
    """Enclosure of ``{x in x0 : b*x in c for some b in b}``."""
    b, c = coerce_pair(b, c)
    c, x0 = _rev_args(c, x0)
    f = c.fmt
    if b.lo is None or c.lo is None or x0.lo is None:
        return empty(f)
    if b.lo <= 0 <= b.hi and c.lo <= 0 <= c.hi:
        return x0
    u, v = div_to_pair(c, b)
    return hull(intersection(u, x0), intersection(v, x0))


def cosh_rev(c, x0=None):
    from . import elem
    c, x0 = _rev_args(c, x0)
    f = c.fmt
    c = intersection(c, _new(f.one, f.pos_inf, f))
    if c.lo is None or x0.lo is None:
        return empty(f)
    return _sym_hull(elem.acosh(c), x0)


# Trigonometric reverses: the solution set of f(x) in c is a union of
# translated copies of one or two principal pieces.  The extreme pieces
# meeting x0 are located near each end of x0; everything is computed in a
# wider BigFloat format and rounded outward.

_TRIG_TOP_CAP = 1 << 14


def _trig_rev(kind, c, x0):
    from . import elem
    c, x0 = _rev_args(c, x0)
    f = c.fmt
    if c.lo is None or x0.lo is None:
        return empty(f)
    if kind != "tan":
        c = intersection(c, _new(-f.one, f.one, f))
        if c.lo is None:
            return c
        if c.lo == -1 and c.hi == 1:
            return x0
    elif infsign(c.lo) < 0 and infsign(c.hi) > 0:
        return x0
    tops = [as_dyadic(v)[1] + as_dyadic(v)[0].bit_length()
            for v in (x0.lo, x0.hi) if not infsign(v) and v != 0]
    top = max(tops, default=0)
    if top > _TRIG_TOP_CAP:
        return x0
    w = bigfloat(f.precision + max(top, 0) + 64)
    pi = elem.pi_interval(w)
    cw = _promote(c, w)
    if kind == "sin":
        s_lo, s_hi = elem.asin(_point(cw.lo, w)), elem.asin(_point(cw.hi, w))
        period = mul(pi, 2)
        # principal pieces in one period, in increasing order
        shapes = [(s_lo, s_hi), (sub(pi, s_hi), sub(pi, s_lo))]
    elif kind == "cos":
        a_lo, a_hi = elem.acos(_point(cw.hi, w)), elem.acos(_point(cw.lo, w))
        period = mul(pi, 2)
        shapes = [(neg(a_hi), neg(a_lo)), (a_lo, a_hi)]
    else:
        t_lo = elem.atan(_point(cw.lo, w)) if not infsign(cw.lo) else neg(div(pi, 2))
        t_hi = elem.atan(_point(cw.hi, w)) if not infsign(cw.hi) else div(pi, 2)
        period = pi
        shapes = [(t_lo, t_hi)]

    def piece(j, s):
        shift = mul(period, j)
        lo_iv, hi_iv = shapes[s]
        return add(lo_iv, shift).lo, add(hi_iv, shift).hi

    def pieces_near(v):
        # pieces whose period index is within two of v's
        q = math.floor(to_fraction(v) / to_fraction(period.lo))
        for j in range(q - 2, q + 3):
            for s in range(len(shapes)):
                yield piece(j, s)

    lo = hi = None
    if infsign(x0.lo) < 0:
        lo = f.neg_inf
    else:
        for plo, phi in pieces_near(x0.lo):
            if phi >= x0.lo:
                lo = f.convert(plo if plo > x0.lo else x0.lo, DOWN)
                if plo > x0.hi:
                    return empty(f)
                break
    if infsign(x0.hi) > 0:
        hi = f.pos_inf
    else:
        for plo, phi in reversed(list(pieces_near(x0.hi))):
            if plo <= x0.hi:
                hi = f.convert(phi if phi < x0.hi else x0.hi, UP)
                if phi < x0.lo:
                    return empty(f)
                break
    if lo is None or hi is None:
        return x0
    if lo < x0.lo:
        lo = x0.lo
    if hi > x0.hi:
        hi = x0.hi
    if lo > hi:
        return empty(f)
    return _new(lo, hi, f)


def _promote(x, fmt):
    from .interval import promote
    return promote(x, fmt)


def _point(v, fmt):
    return _new(v, v, fmt)


def sin_rev(c, x0=None):
    """Enclosure of ``{x in x0 : sin(x) in c}``."""
    return _trig_rev("sin", c, x0)


def cos_rev(c, x0=None):
    """Enclosure of ``{x in x0 : cos(x) in c}``."""
    return _trig_rev("cos", c, x0)


def tan_rev(c, x0=None):
    """Enclosure of ``{x in x0 : tan(x) in c}``."""
    return _trig_rev("tan", c, x0)
