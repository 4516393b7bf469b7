"""Validated polynomial root finding and the barycentric Lebesgue function.

Polynomials have interval coefficients and are evaluated (together with their
derivative) by Horner's rule.  :func:`newton_solve` runs the interval Newton
method with extended division and bisection; :func:`lebesgue_eval` encloses

    L(t) = sum_k |w_k / (t - x_k)|  /  |sum_k w_k / (t - x_k)|

for barycentric weights ``w_k`` and nodes ``x_k``.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Optional, Sequence

from . import arith, elem
from .endpoint import BINARY64, DOWN, UP, bigfloat, common_format
from .errors import ResourceLimit
from .interval import (
    Interval, contains, interior, intersection, is_empty, mid,
    point, promote, wid,
)

__all__ = [
    "IntervalPolynomial", "RootEnclosure", "LebesgueProblem", "horner_eval",
    "newton_solve", "lebesgue_eval", "chebyshev_nodes", "barycentric_weights",
    "lebesgue_problem", "DEFAULT_MAX_BOXES",
]

DEFAULT_MAX_BOXES = 10 ** 6


def _as_interval(c, fmt):
    if isinstance(c, Interval):
        return promote(c, fmt) if c.fmt is not fmt else c
    return point(c, fmt)


@dataclasses.dataclass(frozen=True)
class IntervalPolynomial:
    """``sum(coeffs[k] * t**k)`` with interval (or numeric) coefficients."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence, fmt=None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        if fmt is None:
            fmts = [c.fmt for c in coeffs if isinstance(c, Interval)]
            fmt = common_format(*fmts) if fmts else BINARY64
        object.__setattr__(self, "coeffs", tuple(_as_interval(c, fmt) for c in coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def fmt(self):
        return self.coeffs[0].fmt

    def __call__(self, t):
        return horner_eval(self, t)[0]


@dataclasses.dataclass(frozen=True)
class RootEnclosure:
    """A box that contains a root; ``unique`` certifies exactly one root in it."""

    box: Interval
    unique: bool


def horner_eval(p: IntervalPolynomial, t):
    """Enclosures of ``p(t)`` and ``p'(t)`` by the simultaneous Horner recurrence."""
    if not isinstance(t, Interval):
        t = point(t, p.fmt)
    c = p.coeffs
    v = c[-1]
    d = point(0, v.fmt)
    for ck in reversed(c[:-1]):
        d = d * t + v
        v = v * t + ck
    return v, d


def _newton_step(p, X):
    """Pieces of ``N(X) ∩ X`` and whether the step certifies a unique root."""
    f = X.fmt
    m = point(mid(X), f)
    fm, _ = horner_eval(p, m)
    _, dX = horner_eval(p, X)
    if contains(fm, 0) and contains(dX, 0):
        # any x solves f(m) + f'(xi)(x - m) = 0 once both terms may vanish
        return [X], False
    q1, q2 = arith.div_to_pair(fm, dX)
    pieces = []
    unique = False
    for q in (q1, q2):
        if is_empty(q):
            continue
        N = m - q
        if is_empty(q2) and not contains(dX, 0) and interior(N, X):
            unique = True
        piece = intersection(N, X)
        if not is_empty(piece):
            pieces.append(piece)
    return pieces, unique


def _split(p, X):
    """Bisect ``X``, moving off the midpoint when it is (possibly) a root."""
    f = X.fmt
    m = mid(X)
    fm, _ = horner_eval(p, point(m, f))
    if contains(fm, 0):
        # a root on the split point cannot be certified in either half
        w = f.sub(X.hi, X.lo, DOWN)
        for k, sign in ((4, 1), (4, -1), (8, 1), (8, -1)):
            step = f.div(w, f.convert(k, DOWN), DOWN)
            shifted = f.add(m, step, DOWN) if sign > 0 else f.sub(m, step, DOWN)
            if X.lo < shifted < X.hi and not contains(horner_eval(p, point(shifted, f))[0], 0):
                m = shifted
                break
    if not X.lo < m < X.hi:
        return None
    return [Interval._new(X.lo, m, f), Interval._new(m, X.hi, f)]


def newton_solve(
    p: IntervalPolynomial,
    domain,
    tol=1e-12,
    max_boxes: int = DEFAULT_MAX_BOXES,
    on_discard: Optional[Callable[[Interval], None]] = None,
):
    """Enclose every root of ``p`` in ``domain`` by interval Newton and bisection.

    Returns :class:`RootEnclosure` objects sorted by lower endpoint; their union
    contains every root of every polynomial whose coefficients lie in ``p``.
    Boxes are emitted once their width is at most ``tol`` (or they cannot be
    split further).  ``on_discard`` receives each box proven root-free.
    Raises :class:`ResourceLimit` after ``max_boxes`` boxes.
    """
    if not isinstance(domain, Interval):
        domain = Interval(*domain) if isinstance(domain, tuple) else Interval(domain)
    if is_empty(domain) or not (domain.lo > -float("inf") and domain.hi < float("inf")):
        raise ValueError("domain must be a nonempty bounded interval")
    fmt = common_format(domain.fmt, p.fmt)
    domain = promote(domain, fmt)
    if p.fmt is not fmt:
        p = IntervalPolynomial(p.coeffs, fmt)
    if not tol > 0:
        raise ValueError("tol must be positive")
    tol_up = fmt.convert(tol, UP)

    found = []
    # each work item: (box, certified) where certified means the box is known
    # to hold exactly one root (inherited along Newton steps, never across splits)
    work = [(domain, False)]
    boxes = 0
    while work:
        X, certified = work.pop()
        boxes += 1
        if boxes > max_boxes:
            raise ResourceLimit(f"more than {max_boxes} boxes examined")
        if not contains(horner_eval(p, X)[0], 0):
            if on_discard:
                on_discard(X)
            continue
        pieces, unique = _newton_step(p, X)
        if not pieces:
            if on_discard:
                on_discard(X)
            continue
        certified = certified or unique
        if len(pieces) == 1:
            Y = pieces[0]
            if wid(Y) <= tol_up:
                found.append(RootEnclosure(Y, certified))
                continue
            if not certified and fmt.mul(wid(Y), fmt.convert(2, UP), UP) > wid(X):
                halves = _split(p, Y)
                if halves is None:
                    found.append(RootEnclosure(Y, False))
                else:
                    work.extend((h, False) for h in halves)
                continue
            if Y == X:  # certified but stalled at the rounding level
                found.append(RootEnclosure(Y, certified))
                continue
            work.append((Y, certified))
        else:
            work.extend((Y, False) for Y in pieces)
    found.sort(key=lambda r: r.box.lo)
    return found


# -- Lebesgue function ------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class LebesgueProblem:
    """Nodes, barycentric weights and an evaluation box for the Lebesgue function."""

    nodes: tuple
    weights: tuple
    t: Interval

    def __init__(self, nodes, weights, t):
        nodes, weights = tuple(nodes), tuple(weights)
        if len(nodes) != len(weights) or len(nodes) < 2:
            raise ValueError("need matching nodes and weights (at least two)")
        if not isinstance(t, Interval):
            t = Interval(t)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", tuple(_as_interval(w, t.fmt) for w in weights))
        object.__setattr__(self, "t", t)

    @property
    def degenerate(self):
        """True when the box meets a node (a term divides by an interval holding 0)."""
        return any(contains(self.t, x) for x in self.nodes)


def lebesgue_eval(prob: LebesgueProblem) -> Interval:
    """Enclosure of the Lebesgue function over ``prob.t``."""
    t = prob.t
    f = t.fmt
    num = point(0, f)
    den = point(0, f)
    for x, w in zip(prob.nodes, prob.weights):
        q = w / (t - point(x, f))
        num = num + abs(q)
        den = den + q
    return num / abs(den)


def chebyshev_nodes(n: int, fmt=BINARY64):
    """The ``n`` Chebyshev points of the second kind ``cos(k*pi/(n-1))``, decreasing.

    Each node is evaluated as ``sin(pi*(n-1-2k) / (2(n-1)))`` in a wider
    BigFloat format, which keeps the set exactly symmetric with an exact 0 in
    the middle, then rounded to the nearest ``fmt`` value.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    wide = bigfloat(fmt.precision + 64)
    pi = elem.pi_interval(wide)
    m = n - 1
    nodes = []
    for k in range(n):
        j = m - 2 * k
        if 2 * abs(j) == 2 * m:
            nodes.append(fmt.convert(1 if j > 0 else -1, DOWN))
            continue
        if j == 0:
            nodes.append(fmt.zero)
            continue
        arg = pi * point(j, wide) / point(2 * m, wide)
        v = promote(elem.sin(arg), fmt)
        nodes.append(fmt.mid(v.lo, v.hi))
    return nodes


def barycentric_weights(n: int, fmt=BINARY64):
    """Weights ``(-1)**k * delta_k`` (``delta`` is 1/2 at both ends) as point intervals."""
    if n < 2:
        raise ValueError("need at least two nodes")
    out = []
    for k in range(n):
        w = 0.5 if k in (0, n - 1) else 1.0
        out.append(point(-w if k % 2 else w, fmt))
    return out


def lebesgue_problem(n: int, t, fmt=BINARY64):
    """Chebyshev-node Lebesgue problem of size ``n`` at box ``t``."""
    if not isinstance(t, Interval):
        t = point(t, fmt)
    return LebesgueProblem(chebyshev_nodes(n, fmt), barycentric_weights(n, fmt), t)
