"""The interval value type, its numeric functions, predicates and set operations."""

from __future__ import annotations

import enum

from .endpoint import (
    BINARY64, DOWN, UP, BigFloat, EndpointFormat, bigfloat, common_format, infsign,
)
from .errors import InvalidEndpoints, PrecisionMismatch

__all__ = [
    "Interval", "OverlapState", "make", "empty", "entire", "promote",
    "inf", "sup", "mid", "wid", "rad", "mag", "mig",
    "is_empty", "is_entire", "is_bounded", "is_singleton", "contains", "subset",
    "interior", "disjoint", "equal", "less", "precedes", "strict_less", "strict_precedes",
    "intersection", "hull", "overlap",
]


class Interval:
    """A closed interval ``[lo, hi]`` of extended reals, or the empty set.

    Endpoints belong to one endpoint format (``fmt``).  The empty interval has
    ``lo is hi is None`` but still remembers its format.  Values are treated
    as immutable.

    ``Interval(2.0, 3.0)`` builds from endpoints, ``Interval("[1/3,2/3]")``
    parses text, ``Interval(0.3)`` encloses a single number and ``Interval()``
    is empty.  Numbers that are not representable are rounded outward.
    """

    __slots__ = ("lo", "hi", "fmt")

    def __init__(self, lo=None, hi=None, fmt=None):
        if isinstance(hi, EndpointFormat) and fmt is None:
            hi, fmt = None, hi  # Interval(text_or_number, fmt)
        if isinstance(lo, str) and hi is None:
            from .textio import parse
            x = parse(lo, fmt or BINARY64)
        elif lo is None and hi is None:
            x = empty(fmt or BINARY64)
        else:
            x = make(lo, lo if hi is None else hi, fmt)
        self.lo, self.hi, self.fmt = x.lo, x.hi, x.fmt

    @classmethod
    def _new(cls, lo, hi, fmt):
        self = object.__new__(cls)
        self.lo = lo
        self.hi = hi
        self.fmt = fmt
        return self

    # -- conveniences --------------------------------------------------------------
    def is_empty(self):
        return self.lo is None

    def __repr__(self):
        from .textio import format_interval
        tag = "" if self.fmt is BINARY64 else f", fmt={self.fmt.name}"
        return f"Interval('{format_interval(self)}'{tag})"

    def __str__(self):
        from .textio import format_interval
        return format_interval(self)

    def __format__(self, spec):
        from .textio import Format, format_interval
        return format_interval(self, Format.from_spec(spec)) if spec else str(self)

    def __eq__(self, other):
        if isinstance(other, Interval):
            return equal(self, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __contains__(self, p):
        if isinstance(p, Interval):
            return subset(p, self)
        return contains(self, p)

    def __iter__(self):
        # allows ``lo, hi = x``
        yield self.lo
        yield self.hi

    # arithmetic operators are bound in arith.py
    def __neg__(self):
        return _arith.neg(self)

    def __pos__(self):
        return self

    def __abs__(self):
        return _arith.abs_(self)

    def __add__(self, other):
        return _arith.add(self, other)

    def __radd__(self, other):
        return _arith.add(other, self)

    def __sub__(self, other):
        return _arith.sub(self, other)

    def __rsub__(self, other):
        return _arith.sub(other, self)

    def __mul__(self, other):
        return _arith.mul(self, other)

    def __rmul__(self, other):
        return _arith.mul(other, self)

    def __truediv__(self, other):
        return _arith.div(self, other)

    def __rtruediv__(self, other):
        return _arith.div(other, self)

    def __pow__(self, other):
        if isinstance(other, int):
            return _arith.pown(self, other)
        return _arith.pow(self, other)

    def __rpow__(self, other):
        return _arith.pow(other, self)

    # ``x += y`` and friends fall back to the binary operators above


class OverlapState(enum.Enum):
    BOTH_EMPTY = "bothEmpty"
    FIRST_EMPTY = "firstEmpty"
    SECOND_EMPTY = "secondEmpty"
    BEFORE = "before"
    MEETS = "meets"
    OVERLAPS = "overlaps"
    STARTS = "starts"
    CONTAINED_BY = "containedBy"
    FINISHES = "finishes"
    EQUALS = "equals"
    FINISHED_BY = "finishedBy"
    CONTAINS = "contains"
    STARTED_BY = "startedBy"
    OVERLAPPED_BY = "overlappedBy"
    MET_BY = "metBy"
    AFTER = "after"

    def transpose(self):
        return _TRANSPOSE[self]


_TRANSPOSE = {
    OverlapState.BOTH_EMPTY: OverlapState.BOTH_EMPTY,
    OverlapState.FIRST_EMPTY: OverlapState.SECOND_EMPTY,
    OverlapState.SECOND_EMPTY: OverlapState.FIRST_EMPTY,
    OverlapState.BEFORE: OverlapState.AFTER,
    OverlapState.MEETS: OverlapState.MET_BY,
    OverlapState.OVERLAPS: OverlapState.OVERLAPPED_BY,
    OverlapState.STARTS: OverlapState.STARTED_BY,
    OverlapState.CONTAINED_BY: OverlapState.CONTAINS,
    OverlapState.FINISHES: OverlapState.FINISHED_BY,
    OverlapState.EQUALS: OverlapState.EQUALS,
    OverlapState.FINISHED_BY: OverlapState.FINISHES,
    OverlapState.CONTAINS: OverlapState.CONTAINED_BY,
    OverlapState.STARTED_BY: OverlapState.STARTS,
    OverlapState.OVERLAPPED_BY: OverlapState.OVERLAPS,
    OverlapState.MET_BY: OverlapState.MEETS,
    OverlapState.AFTER: OverlapState.BEFORE,
}


# -- construction -------------------------------------------------------------------


def empty(fmt=BINARY64):
    return Interval._new(None, None, fmt)


def entire(fmt=BINARY64):
    return Interval._new(fmt.neg_inf, fmt.pos_inf, fmt)


def _infer_format(*values):
    precs = [v.prec for v in values if isinstance(v, BigFloat)]
    return bigfloat(max(precs)) if precs else BINARY64


def _is_nan(v):
    return isinstance(v, float) and v != v


def make(lo, hi, fmt=None):
    """The interval ``[lo, hi]``; non-representable bounds are rounded outward.

    Raises InvalidEndpoints when ``lo > hi``, an endpoint is NaN, ``lo`` is
    ``+inf`` or ``hi`` is ``-inf``.
    """
    if fmt is None:
        fmt = _infer_format(lo, hi)
    if _is_nan(lo) or _is_nan(hi):
        raise InvalidEndpoints("NaN endpoint")
    if infsign(lo) > 0 or infsign(hi) < 0:
        raise InvalidEndpoints(f"[{lo}, {hi}] has an infinite endpoint on the wrong side")
    if lo > hi:
        raise InvalidEndpoints(f"lower endpoint {lo} exceeds upper endpoint {hi}")
    return Interval._new(fmt.convert(lo, DOWN), fmt.convert(hi, UP), fmt)


def point(v, fmt):
    """Tightest interval of ``fmt`` enclosing the number ``v``."""
    if isinstance(v, Interval):
        return v
    if _is_nan(v) or infsign(v):
        raise InvalidEndpoints(f"{v} is not a real number")
    return Interval._new(fmt.convert(v, DOWN), fmt.convert(v, UP), fmt)


def promote(x, fmt):
    """Convert ``x`` to endpoint format ``fmt``, rounding outward (exact when widening)."""
    if x.fmt is fmt:
        return x
    if x.lo is None:
        return empty(fmt)
    return Interval._new(fmt.convert(x.lo, DOWN), fmt.convert(x.hi, UP), fmt)


def coerce_pair(x, y):
    """Turn bare numbers into point intervals and check both share one format."""
    xi = isinstance(x, Interval)
    yi = isinstance(y, Interval)
    if xi and yi:
        if x.fmt is not y.fmt:
            raise PrecisionMismatch(
                f"operands have formats {x.fmt.name} and {y.fmt.name}; promote first")
        return x, y
    if xi:
        return x, point(y, x.fmt)
    if yi:
        return point(x, y.fmt), y
    return point(x, BINARY64), point(y, BINARY64)


# -- numeric functions --------------------------------------------------------------------


def inf(x):
    return x.lo


def sup(x):
    return x.hi


def mid(x):
    if x.lo is None:
        return None
    return x.fmt.mid(x.lo, x.hi)


def wid(x):
    if x.lo is None:
        return None
    return x.fmt.sub(x.hi, x.lo, UP)


def rad(x):
    if x.lo is None:
        return None
    f = x.fmt
    if infsign(x.lo) or infsign(x.hi):
        return f.pos_inf
    m = f.mid(x.lo, x.hi)
    a = f.sub(m, x.lo, UP)
    b = f.sub(x.hi, m, UP)
    return a if a >= b else b


def mag(x):
    if x.lo is None:
        return None
    a, b = abs(x.lo), abs(x.hi)
    return a if a >= b else b


def mig(x):
    if x.lo is None:
        return None
    if x.lo <= 0 <= x.hi:
        return x.fmt.zero
    a, b = abs(x.lo), abs(x.hi)
    return a if a <= b else b


# -- predicates ---------------------------------------------------------------------


def is_empty(x):
    return x.lo is None


def is_entire(x):
    return x.lo is not None and infsign(x.lo) < 0 and infsign(x.hi) > 0


def is_bounded(x):
    return x.lo is None or not (infsign(x.lo) or infsign(x.hi))


def is_singleton(x):
    return x.lo is not None and x.lo == x.hi


def contains(x, p):
    """True if the real number ``p`` lies in ``x`` (never for NaN or infinities)."""
    if x.lo is None or _is_nan(p) or infsign(p):
        return False
    return x.lo <= p <= x.hi


def subset(x, y):
    if x.lo is None:
        return True
    if y.lo is None:
        return False
    return y.lo <= x.lo and x.hi <= y.hi


def interior(x, y):
    if x.lo is None:
        return True
    if y.lo is None:
        return False
    return (y.lo < x.lo or infsign(y.lo) < 0) and (x.hi < y.hi or infsign(y.hi) > 0)


def disjoint(x, y):
    if x.lo is None or y.lo is None:
        return True
    return x.hi < y.lo or y.hi < x.lo


def equal(x, y):
    if x.lo is None or y.lo is None:
        return x.lo is None and y.lo is None
    return x.lo == y.lo and x.hi == y.hi


def less(x, y):
    if x.lo is None or y.lo is None:
        return x.lo is None and y.lo is None
    return x.lo <= y.lo and x.hi <= y.hi


def precedes(x, y):
    if x.lo is None or y.lo is None:
        return True
    return x.hi <= y.lo


def strict_less(x, y):
    if x.lo is None or y.lo is None:
        return x.lo is None and y.lo is None
    return (x.lo < y.lo or infsign(x.lo) < 0 and infsign(y.lo) < 0) and \
        (x.hi < y.hi or infsign(x.hi) > 0 and infsign(y.hi) > 0)


def strict_precedes(x, y):
    if x.lo is None or y.lo is None:
        return True
    return x.hi < y.lo


# -- set operations -----------------------------------------------------------------------


def _operand_format(args):
    fmts = [a.fmt for a in args if isinstance(a, Interval)]
    return common_format(*fmts) if fmts else BINARY64


def _intersect2(x, y):
    if x.lo is None or y.lo is None:
        return empty(x.fmt)
    lo = x.lo if x.lo >= y.lo else y.lo
    hi = x.hi if x.hi <= y.hi else y.hi
    if lo > hi:
        return empty(x.fmt)
    return Interval._new(lo, hi, x.fmt)


def _hull2(x, y):
    if x.lo is None:
        return y
    if y.lo is None:
        return x
    lo = x.lo if x.lo <= y.lo else y.lo
    hi = x.hi if x.hi >= y.hi else y.hi
    return Interval._new(lo, hi, x.fmt)


def intersection(*args):
    """Set intersection of intervals, at the widest operand format."""
    if not args:
        raise TypeError("intersection() needs at least one operand")
    fmt = _operand_format(args)
    result = None
    for a in args:
        a = promote(a, fmt) if isinstance(a, Interval) else point(a, fmt)
        result = a if result is None else _intersect2(result, a)
    return result


def hull(*args):
    """Smallest interval containing every operand; numbers count as points."""
    if not args:
        raise TypeError("hull() needs at least one operand")
    fmt = _operand_format(args)
    result = None
    for a in args:
        a = promote(a, fmt) if isinstance(a, Interval) else point(a, fmt)
        result = a if result is None else _hull2(result, a)
    return result


def overlap(x, y):
    """The overlap state of ``x`` relative to ``y``."""
    S = OverlapState
    if x.lo is None:
        return S.BOTH_EMPTY if y.lo is None else S.FIRST_EMPTY
    if y.lo is None:
        return S.SECOND_EMPTY
    a1, a2, b1, b2 = x.lo, x.hi, y.lo, y.hi
    if a2 < b1:
        return S.BEFORE
    if b2 < a1:
        return S.AFTER
    if a1 == b1:
        if a2 == b2:
            return S.EQUALS
        return S.STARTS if a2 < b2 else S.STARTED_BY
    if a2 == b2:
        return S.FINISHES if b1 < a1 else S.FINISHED_BY
    if a2 == b1:
        # a1 < a2 here: a1 == a2 == b1 would have hit the a1 == b1 branch
        return S.MEETS
    if b2 == a1:
        return S.MET_BY
    if a1 < b1:
        return S.OVERLAPS if a2 < b2 else S.CONTAINS
    return S.CONTAINED_BY if a2 < b2 else S.OVERLAPPED_BY


from . import arith as _arith  # noqa: E402  (operators need the arithmetic module)
