"""Array versions of the binary64 directed kernels, for bulk benchmarks.

Each kernel computes the round-to-nearest result with numpy, recovers the
exact rounding error by an error-free transformation (TwoSum, or Dekker's
product for ``*`` and the division residual), and steps one ulp where the
nearest result landed on the wrong side.  Elements outside the range where
the transformations are exact go through the scalar kernels, so the arrays
agree bit for bit with :mod:`intervalkit.endpoint`.
"""

from __future__ import annotations

import numpy as np

from .endpoint import BINARY64, DOWN, UP

_INF = np.inf
_SPLIT = 134217729.0  # 2**27 + 1
# products and quotients whose magnitudes stay inside these bounds are exact
# under the transformations below (no overflow in the split, no underflow in
# the error term)
_TINY = 2.0 ** -960
_HUGE = 2.0 ** 995


def _step(x, err, rnd):
    """Move ``x`` one ulp toward the exact value ``x + err`` where it is needed.

    Works on the integer encoding: for finite nonzero ``x`` the neighbour
    toward -inf is ``bits - 1`` when ``x > 0`` and ``bits + 1`` when ``x < 0``.
    (``err`` is always 0 when ``x`` is 0.)
    """
    x = np.asarray(x, dtype=np.float64)
    move = (err < 0) if rnd is DOWN else (err > 0)
    neg = np.signbit(x)
    toward = neg if rnd is DOWN else ~neg  # where the bit pattern must grow
    delta = move.astype(np.int64) * (2 * toward.astype(np.int64) - 1)
    return (x.view(np.int64) + delta).view(np.float64)


def _scalar_fix(out, mask, op, a, b, rnd):
    if mask.any():
        av = np.broadcast_to(a, out.shape)
        bv = np.broadcast_to(b, out.shape)
        for i in np.flatnonzero(mask):
            out[i] = op(float(av[i]), float(bv[i]), rnd)
    return out


def add(a, b, rnd):
    """Directed elementwise ``a + b`` (operands finite)."""
    with np.errstate(all="ignore"):
        s = a + b
        bb = s - a
        err = (a - (s - bb)) + (b - bb)
        out = _step(s, err, rnd)
    return _scalar_fix(out, ~np.isfinite(out), BINARY64.add, a, b, rnd)


def sub(a, b, rnd):
    return add(a, -b, rnd)


def _split(a):
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _outside(x):
    """Magnitudes where the error-free transformations may not be exact."""
    m = np.abs(x)
    return (m >= _HUGE) | ((m <= _TINY) & (m != 0))


def mul(a, b, rnd):
    """Directed elementwise ``a * b`` (operands finite)."""
    with np.errstate(all="ignore"):
        p, e = _two_prod(a, b)
        out = _step(p, e, rnd)
        m = np.abs(p)
        bad = _outside(a) | _outside(b) | (m >= _HUGE) | ((m <= _TINY) & (a != 0) & (b != 0))
    return _scalar_fix(out, bad, BINARY64.mul, a, b, rnd)


def div(a, b, rnd):
    """Directed elementwise ``a / b`` (operands finite, ``b`` nonzero)."""
    with np.errstate(all="ignore"):
        q = a / b
        p, e = _two_prod(q, b)
        t = a - p  # exact: p is within an ulp of a
        # a/b - q has the sign of (t - e) * sign(b)
        out = _step(q, np.where(b > 0, t - e, e - t), rnd)
        m = np.abs(q)
        bad = _outside(a) | _outside(b) | (m >= _HUGE) | ((m <= _TINY) & (a != 0))
    return _scalar_fix(out, bad, BINARY64.div, a, b, rnd)


def _sub_pair(t, x):
    """Both directed roundings of ``t - x`` from one TwoSum."""
    s = t - x
    bb = s - t
    err = (t - (s - bb)) + (-x - bb)
    return _step(s, err, DOWN), _step(s, err, UP)


def _recip_dir(w, d, rnd):
    """Directed ``w / d`` for a scalar ``w`` and well-scaled ``d`` (no range checks)."""
    q = w / d
    p, e = _two_prod(q, d)
    t = w - p
    return _step(q, np.where(d > 0, t - e, e - t), rnd)


def lebesgue_points(nodes, weights, ts):
    """Lebesgue-function enclosures at point boxes ``[t, t]`` for an array ``ts``.

    ``nodes`` and ``weights`` are floats (point weights).  Returns ``(lo, hi)``
    arrays; empty results (zero denominator) are NaN in both.  The operation
    order matches :func:`intervalkit.newton.lebesgue_eval`, so the results
    are identical to the scalar path.
    """
    ts = np.asarray(ts, dtype=float)
    if ts.size and np.abs(ts).max() > 2.0 ** 400:
        raise ValueError("evaluation points must be moderate in magnitude")
    if max(abs(x) for x in nodes) > 2.0 ** 400 or not all(2.0 ** -400 < abs(w) < 2.0 ** 400
                                                          for w in weights):
        raise ValueError("nodes and weights must be moderate in magnitude")
    num_lo = np.zeros_like(ts)
    num_hi = np.zeros_like(ts)
    den_lo = np.zeros_like(ts)
    den_hi = np.zeros_like(ts)
    for x, w in zip(nodes, weights):
        d_lo, d_hi = _sub_pair(ts, x)
        if np.any((d_lo <= 0) & (d_hi >= 0)):
            raise ValueError("an evaluation point coincides with a node")
        if np.abs(d_lo).min() < _TINY ** 0.5 or np.abs(d_hi).min() < _TINY ** 0.5:
            q_lo, q_hi = (div(w, d_hi, DOWN), div(w, d_lo, UP)) if w > 0 else \
                (div(w, d_lo, DOWN), div(w, d_hi, UP))
        elif w > 0:
            q_lo, q_hi = _recip_dir(w, d_hi, DOWN), _recip_dir(w, d_lo, UP)
        else:
            q_lo, q_hi = _recip_dir(w, d_lo, DOWN), _recip_dir(w, d_hi, UP)
        pos = q_lo >= 0
        num_lo = add(num_lo, np.where(pos, q_lo, -q_hi), DOWN)
        num_hi = add(num_hi, np.where(pos, q_hi, -q_lo), UP)
        den_lo = add(den_lo, q_lo, DOWN)
        den_hi = add(den_hi, q_hi, UP)
    # |den|
    straddle = (den_lo < 0) & (den_hi > 0)
    neg = den_hi <= 0
    m_lo = np.where(straddle, 0.0, np.where(neg, -den_hi, den_lo))
    m_hi = np.where(straddle, np.maximum(-den_lo, den_hi), np.where(neg, -den_lo, den_hi))
    with np.errstate(all="ignore"):
        safe_hi = np.where(m_hi > 0, m_hi, 1.0)
        safe_lo = np.where(m_lo > 0, m_lo, 1.0)
        lo = div(num_lo, safe_hi, DOWN)
        hi = np.where(m_lo > 0, div(num_hi, safe_lo, UP), _INF)
    zero = m_hi == 0
    lo = np.where(zero, np.nan, lo)
    hi = np.where(zero, np.nan, hi)
    return lo, hi
