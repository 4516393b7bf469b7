"""Elementary functions over intervals.

Endpoints are evaluated by the integer kernels in ``_kernels`` at a working
precision of the operand precision plus 32 bits.  A kernel returns a value
with a rigorous error radius; both ends are rounded outward, and when the
two roundings disagree the precision is doubled (up to a cap), so in the
common case each endpoint is the correctly rounded directed value.
"""

from __future__ import annotations

import math

from . import _kernels as K
from .endpoint import DOWN, UP, as_dyadic, infsign
from .interval import Interval, coerce_pair, empty, entire, hull, intersection, point

__all__ = [
    "exp", "log", "log2", "log10", "sin", "cos", "tan", "asin", "acos", "atan",
    "sinh", "cosh", "tanh", "asinh", "acosh", "atanh", "pow_interval", "pi_interval",
    "apply_monotone",
]

_new = Interval._new

_KERNELS = {
    "exp": K.k_exp, "log": K.k_log, "log2": K.k_log2, "log10": K.k_log10,
    "sin": K.k_sin, "cos": K.k_cos, "tan": K.k_tan,
    "asin": K.k_asin, "acos": K.k_acos, "atan": K.k_atan,
    "sinh": K.k_sinh, "cosh": K.k_cosh, "tanh": K.k_tanh,
    "asinh": K.k_asinh, "acosh": K.k_acosh, "atanh": K.k_atanh,
}

# odd functions and the side of the identity line they fall on for small x > 0
_ODD_BELOW = {"sin", "atan", "tanh", "asinh"}
_ODD_ABOVE = {"tan", "asin", "sinh", "atanh"}


def _zivcap(f):
    return 8 * (f.precision + 32) + 256


def _resolve(f, kernel, args, down, up):
    """Directed roundings of a kernel value, refining until both are decided."""
    w = f.precision + 32
    cap = _zivcap(f)
    rnd = f._round
    while True:
        M, E, s = kernel(*args, w)
        d = u = None
        settled = True
        if down:
            d = rnd(M - E, s, DOWN)[0]
            settled = rnd(M + E, s, DOWN)[0] == d
        if up:
            u = rnd(M + E, s, UP)[0]
            settled = settled and rnd(M - E, s, UP)[0] == u
        if settled or w >= cap:
            return d, u
        w *= 2


def _pi_dir(f, scale=1):
    """Directed enclosure of ``pi * scale`` for scale a power of two."""
    w = f.precision + 32
    P, E, s = K.pi_enclosure(w)
    sh = int(math.log2(scale))
    return f._round(P - E, s + sh, DOWN)[0], f._round(P + E, s + sh, UP)[0]


def pi_interval(fmt):
    """Tightest enclosure of pi in endpoint format ``fmt``."""
    lo, hi = _pi_dir(fmt)
    return _new(lo, hi, fmt)


def _overflow_limits(f):
    lowest = f.emin if f.emin is not None else f.min_top - 1
    return (f.emax + 1) * 0.6932, (lowest - 2) * 0.6932


def _tiny_odd(name, f, v):
    """Directed values for an odd function at a tiny argument, or None."""
    m, e = as_dyadic(v)
    if K.top_bit(m, e) >= -(f.precision // 2) - 4:
        return None
    below = name in _ODD_BELOW
    if (v > 0) == below:
        return f.next_down(v), v
    return v, f.next_up(v)


def scalar(name, v, f, down=True, up=True):
    """Directed values ``(f_down(v), f_up(v))`` of an elementary function.

    ``v`` must lie in the closed domain of the function; infinite arguments
    and domain boundaries give the limit value.
    """
    s = infsign(v)
    if name in ("sin", "cos", "tan") and s:
        raise ValueError(f"{name} has no limit at infinity")
    # values at infinity and exact special points
    if s or v == 0:
        special = _special(name, f, s, v)
        if special is not None:
            return special
    if name in _ODD_BELOW or name in _ODD_ABOVE:
        t = _tiny_odd(name, f, v)
        if t is not None:
            return t
    m, e = as_dyadic(v)
    p = f.precision
    if name in ("exp", "cosh", "sinh"):
        hi_lim, lo_lim = _overflow_limits(f)
        if v > hi_lim:
            return f.max_value, f.pos_inf
        if v < -hi_lim:
            if name == "sinh":
                return f.neg_inf, -f.max_value
            if name == "cosh":
                return f.max_value, f.pos_inf
        if name == "exp":
            if v < lo_lim:
                return f.zero, f.min_positive
            if K.top_bit(m, e) < -p - 4:
                return (f.one, f.next_up(f.one)) if v > 0 else (f.next_down(f.one), f.one)
        if name == "cosh" and K.top_bit(m, e) < -(p // 2) - 4:
            return f.one, f.next_up(f.one)
    elif name == "cos":
        if K.top_bit(m, e) < -(p // 2) - 4:
            return f.next_down(f.one), f.one
    elif name == "tanh":
        if abs(v) > (p + 6) * 0.35:
            near = f.next_down(f.one)
            return (near, f.one) if v > 0 else (-f.one, -near)
    elif name in ("log", "log2", "log10"):
        if v == 1:
            return f.zero, f.zero
        if name == "log2" and m & (m - 1) == 0:
            k = K.top_bit(m, e) - 1
            return f.convert(k, DOWN), f.convert(k, UP)
        if name == "log10" and e >= 0:
            n = m << e
            k = len(str(n)) - 1
            if n == 10 ** k:
                return f.convert(k, DOWN), f.convert(k, UP)
    elif name == "acos":
        if v == 1:
            return f.zero, f.zero
        if v == -1:
            return _pi_dir(f)
    elif name == "acosh" and v == 1:
        return f.zero, f.zero
    return _resolve(f, _KERNELS[name], (m, e), down, up)


def _special(name, f, s, v):
    if s == 0:  # v == 0
        if name in ("exp", "cos", "cosh"):
            return f.one, f.one
        if name in ("log", "log2", "log10"):
            return f.neg_inf, f.neg_inf
        if name == "acos":
            return _pi_dir(f, 0.5)
        return f.zero, f.zero
    if name == "exp":
        return (f.zero, f.zero) if s < 0 else (f.pos_inf, f.pos_inf)
    if name == "atan":
        lo, hi = _pi_dir(f, 0.5)
        return (lo, hi) if s > 0 else (-hi, -lo)
    if name == "tanh":
        return (f.one, f.one) if s > 0 else (-f.one, -f.one)
    if name == "cosh":
        return f.pos_inf, f.pos_inf
    inf = f.pos_inf if s > 0 else f.neg_inf
    return inf, inf


# -- interval layer -------------------------------------------------------------------


def _one(x):
    if isinstance(x, Interval):
        return x
    from .endpoint import BINARY64
    return point(x, BINARY64)


def _eval_monotone(name, x, increasing):
    f = x.fmt
    if x.lo == x.hi:
        d, u = scalar(name, x.lo, f)
        return _new(d, u, f)
    if increasing:
        return _new(scalar(name, x.lo, f, up=False)[0], scalar(name, x.hi, f, down=False)[1], f)
    return _new(scalar(name, x.hi, f, up=False)[0], scalar(name, x.lo, f, down=False)[1], f)


def _clamp(x, lo, hi):
    if x.lo is None:
        return x
    a = x.lo if lo is None or x.lo >= lo else lo
    b = x.hi if hi is None or x.hi <= hi else hi
    return _new(a, b, x.fmt)


# domain, monotonicity and range data for the monotone functions
_DOMAINS = {
    "exp": (None, None), "log": (0, None), "log2": (0, None), "log10": (0, None),
    "atan": (None, None), "asinh": (None, None), "sinh": (None, None), "tanh": (None, None),
    "asin": (-1, 1), "acos": (-1, 1), "atanh": (-1, 1), "acosh": (1, None),
}
# a domain boundary that is not itself in the natural domain
_OPEN_ENDS = {"log": (True, False), "log2": (True, False), "log10": (True, False),
              "atanh": (True, True)}


def apply_monotone(name, x):
    """Enclosure of a monotone elementary function over ``x`` ∩ its domain."""
    x = _one(x)
    f = x.fmt
    if x.lo is None:
        return x
    dlo, dhi = _DOMAINS[name]
    if dlo is not None or dhi is not None:
        x = intersection(x, _new(f.neg_inf if dlo is None else f.convert(dlo, DOWN),
                                 f.pos_inf if dhi is None else f.convert(dhi, UP), f))
        if x.lo is None:
            return x
        open_lo, open_hi = _OPEN_ENDS.get(name, (False, False))
        if open_lo and x.hi == dlo or open_hi and x.lo == dhi:
            return empty(f)
    if name == "atanh":
        d = scalar(name, x.lo, f, up=False)[0] if x.lo != -1 else f.neg_inf
        u = scalar(name, x.hi, f, down=False)[1] if x.hi != 1 else f.pos_inf
        if x.lo == x.hi:
            d, u = scalar(name, x.lo, f)
        return _new(d, u, f)
    r = _eval_monotone(name, x, increasing=name != "acos")
    if name == "exp":
        return _clamp(r, f.zero, None)
    if name == "tanh":
        return _clamp(r, -f.one, f.one)
    if name in ("asin", "atan"):
        lo, hi = _pi_dir(f, 0.5)
        return _clamp(r, -hi, hi)
    if name == "acos":
        return _clamp(r, f.zero, _pi_dir(f)[1])
    if name == "acosh":
        return _clamp(r, f.zero, None)
    return r


def exp(x):
    return apply_monotone("exp", x)


def log(x):
    return apply_monotone("log", x)


def log2(x):
    return apply_monotone("log2", x)


def log10(x):
    return apply_monotone("log10", x)


def atan(x):
    return apply_monotone("atan", x)


def asin(x):
    return apply_monotone("asin", x)


def acos(x):
    return apply_monotone("acos", x)


def sinh(x):
    return apply_monotone("sinh", x)


def tanh(x):
    return apply_monotone("tanh", x)


def asinh(x):
    return apply_monotone("asinh", x)


def acosh(x):
    return apply_monotone("acosh", x)


def atanh(x):
    return apply_monotone("atanh", x)


def cosh(x):
    x = _one(x)
    f = x.fmt
    if x.lo is None:
        return x
    if x.lo >= 0:
        r = _eval_monotone("cosh", x, True)
    elif x.hi <= 0:
        r = _eval_monotone("cosh", x, False)
    else:
        far = -x.lo if -x.lo >= x.hi else x.hi
        r = _new(f.one, scalar("cosh", far, f, down=False)[1], f)
    return _clamp(r, f.one, None)


# trigonometric functions ---------------------------------------------------------------

# arguments whose binary exponent exceeds this are not reduced; the result
# is the whole range (valid, not tight)
_TRIG_TOP_CAP = 1 << 14


def _quadrants(x):
    """Certified floor(t / (pi/2)) at both endpoints, or None when unreduced."""
    if infsign(x.lo) or infsign(x.hi):
        return None
    ma, ea = as_dyadic(x.lo)
    mb, eb = as_dyadic(x.hi)
    if max(K.top_bit(ma, ea), K.top_bit(mb, eb)) > _TRIG_TOP_CAP:
        return None
    return K.quadrant(ma, ea), K.quadrant(mb, eb)


def _hits(qa, qb, residue):
    """Is some n = residue (mod 4) in (qa, qb]?  (multiples n * pi/2 inside x)"""
    n = qa + 1 + (residue - qa - 1) % 4
    return n <= qb


def _sin_cos(name, x, max_res, min_res):
    x = _one(x)
    f = x.fmt
    if x.lo is None:
        return x
    unit = _new(-f.one, f.one, f)
    q = _quadrants(x)
    if q is None or q[1] - q[0] >= 4:
        return unit
    qa, qb = q
    if x.lo == x.hi:
        d, u = scalar(name, x.lo, f)
        return _clamp(_new(d, u, f), -f.one, f.one)
    da, ua = scalar(name, x.lo, f)
    db, ub = scalar(name, x.hi, f)
    lo = -f.one if _hits(qa, qb, min_res) else (da if da <= db else db)
    hi = f.one if _hits(qa, qb, max_res) else (ua if ua >= ub else ub)
    return _clamp(_new(lo, hi, f), -f.one, f.one)


def sin(x):
    return _sin_cos("sin", x, 1, 3)


def cos(x):
    return _sin_cos("cos", x, 0, 2)


def tan(x):
    x = _one(x)
    f = x.fmt
    if x.lo is None:
        return x
    q = _quadrants(x)
    if q is None:
        return entire(f)
    qa, qb = q
    if _hits(qa, qb, 1) or _hits(qa, qb, 3):
        return entire(f)
    if x.lo == x.hi:
        d, u = scalar("tan", x.lo, f)
        return _new(d, u, f)
    return _new(scalar("tan", x.lo, f, up=False)[0], scalar("tan", x.hi, f, down=False)[1], f)


# power -------------------------------------------------------------------------------------

_POWN_LIMIT = 1 << 20


def _pow_scalar(a, b, f, rnd):
    """Directed ``a**b`` for a >= 0 (limits at 0 and infinity)."""
    from .arith import _pow_dir, _recip_pow_dir
    sa, sb = infsign(a), infsign(b)
    if a == 1 or (not sb and b == 0):
        return f.one
    if sb:
        if (a > 1) == (sb > 0):
            return f.pos_inf
        return f.zero
    if a == 0:
        return f.zero if b > 0 else f.pos_inf
    if sa:
        return f.pos_inf if b > 0 else f.zero
    mb, eb = as_dyadic(b)
    if eb >= 0 and abs(mb) << eb <= _POWN_LIMIT:
        n = mb << eb
        return _pow_dir(f, a, n, rnd) if n > 0 else _recip_pow_dir(f, a, -n, rnd)
    exact = _exact_pow(a, mb, eb, f, rnd)
    if exact is not None:
        return exact
    hi_lim, lo_lim = _overflow_limits(f)
    ma, ea = as_dyadic(a)
    approx = float(b) * (K.top_bit(ma, ea) - 0.5) * K.LN2
    if approx > 4 * hi_lim + 100:
        return f.max_value if rnd is DOWN else f.pos_inf
    if approx < 4 * lo_lim - 100:
        return f.zero if rnd is DOWN else f.min_positive
    d, u = _resolve(f, K.k_pow, (ma, ea, mb, eb), rnd is DOWN, rnd is UP)
    return d if rnd is DOWN else u


def _exact_pow(a, mb, eb, f, rnd):
    """a**b when it is exactly a power of two or an exact root; else None."""
    ma, ea = as_dyadic(a)
    if ma & (ma - 1) == 0:
        # a = 2**k: a**b = 2**(k*b), exact when k*b is an integer
        k = K.top_bit(ma, ea) - 1
        num = k * mb
        if eb >= 0 or num % (1 << -eb) == 0:
            t = num << eb if eb >= 0 else num >> -eb
            if abs(t) < 1 << 40:
                return f._round(1, t, rnd)[0]
        return None
    # b = mb / 2**k with odd mb: exact iff a has an exact 2**k-th root
    if -eb > 16 or abs(mb) > 1 << 12:
        return None
    r = f.root_int(a, 1 << -eb, DOWN)
    if r != f.root_int(a, 1 << -eb, UP):
        return None
    from .arith import _pow_dir, _recip_pow_dir
    return _pow_dir(f, r, mb, rnd) if mb > 0 else _recip_pow_dir(f, r, -mb, rnd)


def pow_interval(x, y):
    """Enclosure of ``{a**b : a in x, a >= 0, b in y}`` (``0**b`` only for b > 0)."""
    x, y = coerce_pair(x, y)
    f = x.fmt
    x = intersection(x, _new(f.zero, f.pos_inf, f))
    if x.lo is None or y.lo is None:
        return empty(f)
    xl, xh = x.lo, x.hi
    if xh == 0:
        return _new(f.zero, f.zero, f) if y.hi > 0 else empty(f)
    P = lambda a, b: _pow_scalar(a, b, f, DOWN)   # noqa: E731
    Q = lambda a, b: _pow_scalar(a, b, f, UP)     # noqa: E731
    pieces = []
    if y.hi >= 0:
        bl = y.lo if y.lo >= 0 else f.zero
        bh = y.hi
        if bh == 0:
            pieces.append(_new(f.one, f.one, f))
        else:
            lo = P(xl, bl if xl >= 1 else bh)
            hi = Q(xh, bh if xh >= 1 else bl)
            pieces.append(_new(lo, hi, f))
    if y.lo < 0:
        bl = y.lo
        bh = y.hi if y.hi <= 0 else f.zero
        lo = P(xh, bl if xh >= 1 else bh)
        hi = f.pos_inf if xl == 0 else Q(xl, bh if xl >= 1 else bl)
        pieces.append(_new(lo, hi, f))
    return hull(*pieces)
