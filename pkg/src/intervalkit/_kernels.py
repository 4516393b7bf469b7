"""Fixed-point integer kernels for the elementary functions.

A *ball* is a pair ``(X, E)`` of integers read at a scale ``W``: the true
value lies in ``[(X - E) / 2**W, (X + E) / 2**W]``.  Every operation below
returns a ball that contains the exact result for all points of its input
balls, so error bounds are carried along with the arithmetic instead of
being estimated afterwards.

The public kernels take an exact dyadic argument ``m * 2**e`` and a target
relative precision ``w`` in bits, and return ``(M, E, s)`` meaning the true
value lies in ``[(M - E) * 2**s, (M + E) * 2**s]``.  The caller (see
``elem.py``) rounds both ends outward and retries with a larger ``w`` when
the rounding is not yet decided.
"""

from __future__ import annotations

import functools
import math

LN2 = 0.6931471805599453

# hard ceiling on any internal scale, to keep absurd arguments bounded
MAX_SCALE = 1 << 22


# -- ball arithmetic ---------------------------------------------------------------


def fix(m, e, W):
    """Ball of the dyadic ``m * 2**e`` at scale ``W``."""
    sh = e + W
    if sh >= 0:
        return m << sh, 0
    return m >> -sh, 1


def bmul(a, b, W):
    X, Ex = a
    Y, Ey = b
    return (X * Y) >> W, ((abs(X) * Ey + abs(Y) * Ex + Ex * Ey) >> W) + 2


def bsqr(a, W):
    X, E = a
    return (X * X) >> W, ((2 * abs(X) * E + E * E) >> W) + 2


def bdiv(a, b, W):
    X, Ex = a
    Y, Ey = b
    aY = abs(Y)
    if aY <= Ey:
        raise ZeroDivisionError("divisor ball contains zero")
    err = ((Ex * aY + abs(X) * Ey) << W) // (aY * (aY - Ey)) + 2
    return (X << W) // Y, err


def bdivint(a, k):
    X, E = a
    return X // k, E // k + 2


def bsqrt(a, W):
    """Square root of a ball whose true value is known to be >= 0."""
    X, E = a
    lo = X - E
    if lo > 0:
        Z = math.isqrt(X << W)
        return Z, ((E << W) // (2 * math.isqrt(lo << W))) + 2
    top = math.isqrt(max(X + E, 0) << W) + 1
    c = top // 2
    return c, top - c + 1


def bshift(a, d):
    """Rescale a ball from scale W to scale W - d (d >= 0 loses bits)."""
    X, E = a
    if d <= 0:
        return X << -d, E << -d
    return X >> d, (E >> d) + 2


def top_bit(m, e):
    """Exponent t with 2**(t-1) <= |m * 2**e| < 2**t."""
    return e + abs(m).bit_length()


# -- constants -----------------------------------------------------------------------


def _atan_inv(k, G):
    """atan(1/k) * 2**G with error at most (number of terms) * 2 + 2."""
    t = (1 << G) // k
    s = t
    k2 = k * k
    j = 1
    while t:
        t //= k2
        j += 2
        term = t // j
        s += -term if (j >> 1) & 1 else term
    return s


def _atanh_inv(k, G):
    """atanh(1/k) * 2**G with error at most (number of terms) * 2 + 2."""
    t = (1 << G) // k
    s = t
    k2 = k * k
    j = 1
    while t:
        t //= k2
        j += 2
        s += t // j
    return s


_GUARD = 32


@functools.lru_cache(maxsize=32)
def _pi_cached(G):
    g = G + _GUARD
    return (16 * _atan_inv(5, g) - 4 * _atan_inv(239, g)) >> _GUARD


@functools.lru_cache(maxsize=32)
def _ln2_cached(G):
    g = G + _GUARD
    return (2 * _atanh_inv(3, g)) >> _GUARD


@functools.lru_cache(maxsize=32)
def _ln10_cached(G):
    g = G + _GUARD
    # ln 10 = 3 ln 2 + ln(5/4) = 6 atanh(1/3) + 2 atanh(1/9)
    return (6 * _atanh_inv(3, g) + 2 * _atanh_inv(9, g)) >> _GUARD


def _const(cached, W):
    G = max(64, (W + 63) // 64 * 64)
    return cached(G) >> (G - W), 3


def pi_ball(W):
    return _const(_pi_cached, W)


def ln2_ball(W):
    return _const(_ln2_cached, W)


def ln10_ball(W):
    return _const(_ln10_cached, W)


def _int_times_const(k, const, W):
    """Ball of ``k * C`` at scale W for an integer k."""
    kb = abs(k).bit_length() + 2
    C, _ = const(W + kb)
    return (k * C) >> kb, ((abs(k) * 3) >> kb) + 2


# -- series ------------------------------------------------------------------------------


def _odd_series(s, W, alternating):
    """sum s**(2j+1)/(2j+1), optionally with alternating signs, for |s| <= 1/2."""
    s2 = bsqr(s, W)
    X, E = s
    p = s
    j = 1
    while True:
        p = bmul(p, s2, W)
        j += 2
        tX, tE = bdivint(p, j)
        if alternating and (j >> 1) & 1:
            tX = -tX
        X += tX
        E += tE
        if abs(p[0]) <= 1:
            break
    # the tail is dominated by the last power times a geometric factor <= 1
    return X, E + abs(p[0]) + p[1]


def _exp_ball(t, W):
    """exp of a ball at scale W: returns (Y, E, Ws, n) with value (Y/2**Ws) * 2**n."""
    T, Et = t
    n = round(T / (1 << W) / LN2) if T else 0
    nL = _int_times_const(n, ln2_ball, W)
    R, ER = T - nL[0], Et + nL[1]
    k = max(2, math.isqrt(W) // 2)
    Ws = W + k                      # the same integers now read as r / 2**k
    one = 1 << Ws
    SX, SE = one + R, ER
    term = (R, ER)
    r = (R, ER)
    j = 1
    while True:
        j += 1
        term = bdivint(bmul(term, r, Ws), j)
        SX += term[0]
        SE += term[1]
        if abs(term[0]) <= 1:
            break
    SE += abs(term[0]) + term[1]
    y = (SX, SE)
    for _ in range(k):
        y = bsqr(y, Ws)
    return y[0], y[1], Ws, n


def _log_normalized(num, den, k, w, exact_zero_ok=True):
    """log(num/den) + k*ln2 for num/den in [3/4, 3/2); returns a ball and its scale."""
    d = num - den
    if k == 0:
        W = w + 16 + max(0, (num + den).bit_length() - abs(d).bit_length()) if d else w + 16
    else:
        W = w + 18
    W = min(W, MAX_SCALE)
    S = ((d << W) // (num + den), 1)
    A = _odd_series(S, W, alternating=False)
    X, E = 2 * A[0], 2 * A[1]
    if k:
        kl = _int_times_const(k, ln2_ball, W)
        X += kl[0]
        E += kl[1]
    return (X, E), W


def _normalize_ratio(P, Q):
    """Write P/Q (both > 0) as (num/den) * 2**k with num/den in [3/4, 3/2)."""
    k = P.bit_length() - Q.bit_length()
    num, den = (P, Q << k) if k >= 0 else (P << -k, Q)
    while 4 * num < 3 * den:
        num <<= 1
        k -= 1
    while 2 * num >= 3 * den:
        den <<= 1
        k += 1
    return num, den, k


def _log_ratio(P, Q, w):
    num, den, k = _normalize_ratio(P, Q)
    return _log_normalized(num, den, k, w)


def _log_dyadic(m, e, w):
    """log(m * 2**e) for m > 0 as a ball and its scale."""
    b = m.bit_length()
    num, den, k = _normalize_ratio(m, 1 << b)
    return _log_normalized(num, den, k + b + e, w)


def _log_ball(y, W):
    """log of a ball (value >= 1/2) at scale W; returns ball and scale."""
    Y, E = y
    k = Y.bit_length() - 1 - W
    if 2 * Y >= 3 << (W + k):
        k += 1
    Wy = W + k
    one = 1 << Wy
    s = bdiv((Y - one, E), (Y + one, E), Wy)
    A = _odd_series(s, Wy, alternating=False)
    X, Ea = 2 * A[0], 2 * A[1]
    if k:
        kl = _int_times_const(k, ln2_ball, Wy)
        X += kl[0]
        Ea += kl[1]
    return (X, Ea), Wy


def _atan_small(t, W, reductions=3):
    """atan of a ball with |t| <= ~1 at scale W; result at scale W."""
    R = reductions
    Wr = W + R
    t = (t[0] << R, t[1] << R)
    one = 1 << Wr
    for _ in range(R):
        t2 = bsqr(t, Wr)
        d = bsqrt((one + t2[0], t2[1]), Wr)
        t = bdiv(t, (one + d[0], d[1]), Wr)
    return _odd_series(t, Wr, alternating=True)  # read at scale W this is 2**R * atan


def _atan_any(t, W):
    T, E = t
    one = 1 << W
    if abs(T) <= one:
        return _atan_small(t, W)
    inv = bdiv((one, 0), t, W)
    A = _atan_small(inv, W)
    P, Ep = pi_ball(W + 1)   # read at scale W + 1 this is pi, so at scale W + 2 it is pi/2
    hp = bshift((P, Ep), 2)
    if T > 0:
        return hp[0] - A[0], hp[1] + A[1]
    return -hp[0] - A[0], hp[1] + A[1]


def _sincos_series(r, W, want):
    """sin(r) if want == 'sin' else cos(r), for a ball |r| <= ~0.8 at scale W."""
    r2 = bsqr(r, W)
    if want == "sin":
        term = r
        X, E = r
        j = 1
    else:
        term = (1 << W, 0)
        X, E = term
        j = 0
    sign = 1
    while True:
        term = bdivint(bmul(term, r2, W), (j + 1) * (j + 2))
        j += 2
        sign = -sign
        X += sign * term[0]
        E += term[1]
        if abs(term[0]) <= 1:
            break
    return X, E + abs(term[0]) + term[1]


def _even_series(x, W, start):
    """sum x**(2j+start)/(2j+start)! for start in (0, 1), |x| < 1 (sinh/cosh)."""
    x2 = bsqr(x, W)
    term = x if start else (1 << W, 0)
    X, E = term
    j = start
    while True:
        term = bdivint(bmul(term, x2, W), (j + 1) * (j + 2))
        j += 2
        X += term[0]
        E += term[1]
        if abs(term[0]) <= 1:
            break
    return X, E + abs(term[0]) + term[1]


# -- public kernels -------------------------------------------------------------------------
# Each returns (M, E, s): the value lies in [(M - E) * 2**s, (M + E) * 2**s].


def _scale(w, extra):
    return min(w + 16 + max(0, extra), MAX_SCALE)


def k_exp(m, e, w):
    W = _scale(w, -top_bit(m, e))
    Y, E, Ws, n = _exp_ball(fix(m, e, W), W)
    return Y, E, n - Ws


def k_log(m, e, w):
    (X, E), W = _log_dyadic(m, e, w)
    return X, E, -W


def k_log2(m, e, w):
    (X, E), W = _log_dyadic(m, e, w)
    Z = bdiv((X, E), ln2_ball(W), W)
    return Z[0], Z[1], -W


def k_log10(m, e, w):
    (X, E), W = _log_dyadic(m, e, w)
    Z = bdiv((X, E), ln10_ball(W), W)
    return Z[0], Z[1], -W


def _reduce(m, e, w, cos_like):
    """Reduce x modulo pi/2: returns (k, r ball, W) with |r| <= ~pi/4."""
    top = top_bit(m, e)
    if top <= -1:
        extra = -top * (2 if cos_like else 1)
        W = _scale(w, extra)
        return 0, fix(m, e, W), W
    W = _scale(w, 0)
    while True:
        Wr = W + top + 8
        P, Ep = pi_ball(Wr)
        HP = P >> 1                      # pi/2 at scale Wr, error <= 3
        X, Ex = fix(m, e, Wr)
        k = (2 * X + HP) // (2 * HP)
        R = X - k * HP
        ER = Ex + abs(k) * 3
        lost = Wr - max(R.bit_length(), 1)   # about -log2|r|
        need = _scale(w, 2 * max(0, lost - 2))
        if need <= W or W >= MAX_SCALE:
            break
        W = need
    return k, bshift((R, ER), Wr - W), W


def k_sin(m, e, w):
    k, r, W = _reduce(m, e, w, False)
    q = k & 3
    X, E = _sincos_series(r, W, "sin" if q in (0, 2) else "cos")
    return (-X if q >= 2 else X), E, -W


def k_cos(m, e, w):
    k, r, W = _reduce(m, e, w, True)
    q = k & 3
    X, E = _sincos_series(r, W, "cos" if q in (0, 2) else "sin")
    return (-X if q in (1, 2) else X), E, -W


def k_tan(m, e, w):
    k, r, W = _reduce(m, e, w, True)
    s = _sincos_series(r, W, "sin")
    c = _sincos_series(r, W, "cos")
    if k & 1:
        Z = bdiv(c, s, W)
        return -Z[0], Z[1], -W
    Z = bdiv(s, c, W)
    return Z[0], Z[1], -W


def k_atan(m, e, w):
    top = top_bit(m, e)
    W = _scale(w, -top)
    if top > W:
        # |x| > 2**W: atan(x) = ±pi/2 - 1/x + ..., and 1/x is below one unit
        P, Ep = pi_ball(W + 1)
        hp = bshift((P, Ep), 2)
        X = hp[0] if m > 0 else -hp[0]
        return X, hp[1] + 1, -W
    X, E = _atan_any(fix(m, e, W), W)
    return X, E, -W


def _one_minus_square(m, e, W):
    """Ball of 1 - x**2 at scale W (exact when the shift allows)."""
    X, E = fix(m * m, 2 * e, W)
    return (1 << W) - X, E


def k_asin(m, e, w):
    # asin x = 2 atan(x / (1 + sqrt(1 - x**2)))
    W = _scale(w, -top_bit(m, e))
    d = bsqrt(_one_minus_square(m, e, W), W)
    t = bdiv(fix(m, e, W), ((1 << W) + d[0], d[1]), W)
    X, E = _atan_small(t, W)
    return X, E, 1 - W


def k_acos(m, e, w):
    # acos x = 2 atan(sqrt((1 - x) / (1 + x))), with (1-x)/(1+x) exact
    if e >= 0:       # x == -1 (x == 1 is handled by the caller)
        P, Ep = pi_ball(_scale(w, 0))
        return P, Ep, -_scale(w, 0)
    d = 1 << -e
    num, den = d - m, d + m
    extra = den.bit_length() - num.bit_length()
    W = _scale(w, extra)
    q = ((num << W) // den, 1)
    X, E = _atan_any(bsqrt(q, W), W)
    return X, E, 1 - W


def k_sinh(m, e, w):
    top = top_bit(m, e)
    if top <= 0:
        W = _scale(w, -top)
        X, E = _even_series(fix(m, e, W), W, 1)
        return X, E, -W
    return _sinh_cosh_large(m, e, w, -1)


def k_cosh(m, e, w):
    top = top_bit(m, e)
    if top <= 0:
        W = _scale(w, -2 * top)
        X, E = _even_series(fix(m, e, W), W, 0)
        return X, E, -W
    return _sinh_cosh_large(abs(m), e, w, 1)


def _exp_pair(m, e, W):
    """exp(|x|) as (y ball at scale Ws, n) and the ball of 2**(-2n) / y."""
    Y, E, Ws, n = _exp_ball(fix(abs(m), e, W), W)
    inv = bdiv((1 << Ws, 0), (Y, E), Ws)
    inv = bshift(inv, 2 * n) if n >= 0 else (inv[0] << -2 * n, inv[1] << -2 * n)
    return (Y, E), inv, Ws, n


def _sinh_cosh_large(m, e, w, sign):
    W = _scale(w, 0)
    y, inv, Ws, n = _exp_pair(m, e, W)
    X = y[0] + sign * inv[0]
    E = y[1] + inv[1]
    if sign < 0 and m < 0:
        X = -X
    return X, E, n - 1 - Ws


def k_tanh(m, e, w):
    top = top_bit(m, e)
    if top <= 0:
        W = _scale(w, -top)
        x = fix(m, e, W)
        s = _even_series(x, W, 1)
        c = _even_series(x, W, 0)
        Z = bdiv(s, c, W)
        return Z[0], Z[1], -W
    # |x| >= 1/2: (1 - e**-2|x|) / (1 + e**-2|x|) needs bits to see e**-2|x|
    ax = abs(m) << e if e >= 0 else abs(m) >> -e
    W = _scale(w, min(3 * ax + 8, MAX_SCALE))
    y, inv, Ws, n = _exp_pair(m, e, W)
    Z = bdiv((y[0] - inv[0], y[1] + inv[1]), (y[0] + inv[0], y[1] + inv[1]), Ws)
    return (Z[0] if m > 0 else -Z[0]), Z[1], -Ws


def _log_plus_tail(m, e, w, tail_top, tail_sign):
    """log(2|x|) plus a one-signed tail of size below 2**tail_top."""
    (X, E), W = _log_dyadic(abs(m), e + 1, w)
    sh = tail_top + W
    E += (1 << sh) if sh >= 0 else 1
    return X, E, -W


def k_asinh(m, e, w):
    top = top_bit(m, e)
    W = _scale(w, -top)
    if top > W // 2 + 4:
        # asinh|x| = log(2|x|) + d with 0 < d < 1/(4x**2)
        X, E, s = _log_plus_tail(m, e, w, -2 * (top - 1) - 2, 1)
        return (X if m > 0 else -X), E, s
    a = fix(abs(m), e, W)
    sq = fix(m * m, 2 * e, W)
    r = bsqrt(((1 << W) + sq[0], sq[1]), W)
    (X, E), Wy = _log_ball((a[0] + r[0], a[1] + r[1]), W)
    return (X if m > 0 else -X), E, -Wy


def k_acosh(m, e, w):
    top = top_bit(m, e)
    if top > _scale(w, 0) // 2 + 4:
        # acosh x = log(2x) - d with 0 < d < 1/(2x**2)
        return _log_plus_tail(m, e, w, -2 * (top - 1) - 1, -1)
    # x - 1 exactly, to size the scale near x == 1
    if e >= 0:
        dm, de = (m << e) - 1, 0
    else:
        dm, de = m - (1 << -e), e
    W = _scale(w, -top_bit(dm, de))
    x = fix(m, e, W)
    # x**2 - 1 = (x - 1)(x + 1), exact as a dyadic
    pm = dm * (dm + (2 << -de) if de < 0 else dm + 2)
    p = fix(pm, 2 * de, W)
    r = bsqrt(p, W)
    (X, E), Wy = _log_ball((x[0] + r[0], x[1] + r[1]), W)
    return X, E, -Wy


def k_atanh(m, e, w):
    top = top_bit(m, e)
    if top <= -1:
        W = _scale(w, -top)
        X, E = _odd_series(fix(m, e, W), W, alternating=False)
        return X, E, -W
    d = 1 << -e
    (X, E), W = _log_ratio(d + m, d - m, w)
    return X, E, -W - 1


def k_pow(am, ae, bm, be, w):
    """a**b for a > 0 and finite b != 0, both dyadic."""
    btop = top_bit(bm, be)
    (L, EL), Wl = _log_dyadic(am, ae, w + max(0, btop) + 8)
    # t = b * log a, read at scale Wl - be
    T, ET = L * bm, EL * abs(bm)
    Wt = Wl - be
    W = _scale(w, 8)
    t = bshift((T, ET), Wt - W)
    Y, E, Ws, n = _exp_ball(t, W)
    return Y, E, n - Ws


def pi_enclosure(w):
    """(M, E, s) for pi."""
    P, E = pi_ball(w)
    return P, E, -w


def quadrant(m, e):
    """floor(x / (pi/2)) for x = m * 2**e, certified with an enclosure of pi."""
    if m == 0:
        return 0
    top = top_bit(m, e)
    if top <= 0:
        return 0 if m > 0 else -1
    G = top + 64 + max(0, -e)
    while True:
        P, Ep = pi_ball(G)
        X, _ = fix(m, e, G)           # exact: G >= -e
        a = (2 * X) // (P + Ep)
        b = (2 * X) // (P - Ep)
        if a == b:
            return a
        G += 64
