"""Endpoint formats and directed-rounding kernels.

Two families of endpoints are provided:

* IEEE binary formats (``BINARY64`` and the optional ``BINARY32``) whose
  values are plain Python floats;
* ``BigFloat``, a software float with an N-bit significand, whose values are
  :class:`BigFloat` instances.  ``bigfloat(n)`` returns the format object.

Every kernel takes the rounding direction as an explicit argument.  No
process-wide rounding mode is ever touched, so all functions here are
reentrant.  The binary64 kernels run on round-to-nearest hardware and detect
the direction of the rounding error with error-free transformations (TwoSum
and Dekker's TwoProduct); every other case goes through exact integer
arithmetic.
"""

from __future__ import annotations

import enum
import functools
import math
from fractions import Fraction
from numbers import Rational

from .errors import UndefinedOperation

__all__ = [
    "RoundingDirection", "DOWN", "UP",
    "EndpointFormat", "BINARY64", "BINARY32", "BigFloat", "bigfloat", "format_of",
    "parse_format", "common_format",
    "dir_add", "dir_sub", "dir_mul", "dir_div", "dir_sqrt", "dir_fma",
    "next_up", "next_down", "from_rational", "convert",
]


class RoundingDirection(enum.Enum):
    DOWN = "down"
    UP = "up"

    def flip(self):
        return UP if self is DOWN else DOWN


DOWN = RoundingDirection.DOWN
UP = RoundingDirection.UP
# round-half-even; only used internally (midpoints, nearest conversions)
NEAREST = None

_INF = math.inf
_TWO53 = 9007199254740992.0


def _round_bits(man, exp, prec, emin, rnd, sticky=False):
    """Round ``(man + sticky) * 2**exp`` to ``prec`` significant bits.

    ``sticky`` marks a value whose magnitude exceeds ``|man|`` by a positive
    amount smaller than one unit; callers pass at least ``prec + 1`` bits
    whenever it is set.  ``emin`` is the smallest admissible exponent of the
    last kept bit (gradual underflow), or None.
    Returns ``(man, exp, inexact)``.
    """
    neg = man < 0
    if neg:
        man = -man
    shift = man.bit_length() - prec
    if emin is not None and exp + shift < emin:
        shift = emin - exp
    if shift > 0:
        q = man >> shift
        rem = man - (q << shift)
        inexact = sticky or rem != 0
        if inexact:
            if rnd is NEAREST:
                half = 1 << (shift - 1)
                if rem > half or (rem == half and (sticky or q & 1)):
                    q += 1
            elif (rnd is UP) != neg:
                q += 1
        man = q
        exp += shift
        if man.bit_length() > prec:
            man >>= 1
            exp += 1
    else:
        assert not sticky, "sticky rounding needs prec + 1 bits"
        inexact = False
    return (-man if neg else man), exp, inexact


def _exact_sum(ma, ea, mb, eb, prec):
    """Sum of two dyadics as ``(man, exp, sticky)``, collapsing huge exponent gaps."""
    if ma == 0:
        return mb, eb, False
    if mb == 0:
        return ma, ea, False
    if ea + abs(ma).bit_length() < eb + abs(mb).bit_length():
        ma, ea, mb, eb = mb, eb, ma, ea
    sh = prec + 3 - abs(ma).bit_length()
    if sh > 0:
        ma <<= sh
        ea -= sh
    if eb + abs(mb).bit_length() < ea - 1:
        # |b| is below half a unit of a's last place: it only decides the direction
        if (ma > 0) == (mb > 0):
            return ma, ea, True
        return (ma - 1 if ma > 0 else ma + 1), ea, True
    if ea >= eb:
        return (ma << (ea - eb)) + mb, eb, False
    return ma + (mb << (eb - ea)), ea, False


def _cmp_dyadic(ma, ea, mb, eb):
    """Three-way comparison of ``ma*2**ea`` and ``mb*2**eb``."""
    if ma == 0 or mb == 0 or (ma > 0) != (mb > 0):
        sa = (ma > 0) - (ma < 0)
        sb = (mb > 0) - (mb < 0)
        return (sa > sb) - (sa < sb)
    ta = ea + abs(ma).bit_length()
    tb = eb + abs(mb).bit_length()
    if ta != tb:
        r = 1 if ta > tb else -1
        return r if ma > 0 else -r
    if ea >= eb:
        a, b = ma << (ea - eb), mb
    else:
        a, b = ma, mb << (eb - ea)
    return (a > b) - (a < b)


def _float_parts(x):
    m, e = math.frexp(x)
    return int(m * _TWO53), e - 53


def as_dyadic(v):
    """Exact ``(man, exp)`` of a finite float, int or BigFloat."""
    if isinstance(v, float):
        return _float_parts(v)
    if isinstance(v, BigFloat):
        return v.man, v.exp
    if isinstance(v, int):
        return v, 0
    raise TypeError(f"not a dyadic number: {v!r}")


def infsign(v):
    """+1 / -1 for infinite endpoints, 0 otherwise."""
    if isinstance(v, float):
        if v - v == 0:
            return 0
        if v != v:
            raise UndefinedOperation("NaN is not an endpoint")
        return 1 if v > 0 else -1
    if isinstance(v, BigFloat):
        return v.inf
    return 0


def to_fraction(v):
    """Exact rational value of a finite endpoint."""
    if isinstance(v, Fraction):
        return v
    m, e = as_dyadic(v)
    return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)


class BigFloat:
    """Software binary float with a fixed ``prec``-bit significand.

    The value is ``man * 2**exp`` with ``2**(prec-1) <= |man| < 2**prec``, or
    zero (``man == 0``), or an infinity (``inf`` is +1 or -1).  There is no
    signed zero and no NaN.  Instances are immutable and compare exactly with
    each other, with floats, ints and Fractions.

    >>> BigFloat(1, 64) < BigFloat(2, 53)
    True
    """

    __slots__ = ("man", "exp", "prec", "inf")

    DEFAULT_PREC = 256
    # exponent of the leading bit: 2**(EMIN-1) <= |x| < 2**EMAX
    EMAX = 2 ** 30
    EMIN = -(2 ** 30)

    def __init__(self, value=0, prec=None, rnd=NEAREST):
        prec = self.DEFAULT_PREC if prec is None else int(prec)
        if prec < 2:
            raise ValueError("BigFloat precision must be at least 2 bits")
        if isinstance(value, str):
            value = Fraction(value)
        fmt = bigfloat(prec)
        if isinstance(value, (Rational)) and not isinstance(value, int):
            v, _ = fmt.from_rational(value.numerator, value.denominator, rnd)
        else:
            v = fmt.convert(value, rnd)
        self.man, self.exp, self.prec, self.inf = v.man, v.exp, v.prec, v.inf

    @classmethod
    def _raw(cls, man, exp, prec, inf=0):
        self = object.__new__(cls)
        self.man = man
        self.exp = exp
        self.prec = prec
        self.inf = inf
        return self

    # -- queries ---------------------------------------------------------------
    def is_finite(self):
        return not self.inf

    def is_zero(self):
        return not self.inf and self.man == 0

    def __bool__(self):
        return bool(self.inf or self.man)

    def to_fraction(self):
        if self.inf:
            raise OverflowError("infinite BigFloat has no rational value")
        return to_fraction(self)

    def __float__(self):
        if self.inf:
            return math.copysign(_INF, self.inf)
        return BINARY64.from_dyadic(self.man, self.exp, NEAREST)

    def __neg__(self):
        return BigFloat._raw(-self.man, self.exp, self.prec, -self.inf)

    def __abs__(self):
        return BigFloat._raw(abs(self.man), self.exp, self.prec, abs(self.inf))

    def __pos__(self):
        return self

    # -- exact comparisons ------------------------------------------------------
    def _cmp(self, other):
        if isinstance(other, float) and other != other:
            return None
        if not isinstance(other, (float, int, BigFloat, Rational)):
            return NotImplemented
        oi = infsign(other)
        if self.inf or oi:
            return (self.inf > oi) - (self.inf < oi)
        if isinstance(other, (float, int, BigFloat)):
            m, e = as_dyadic(other)
            return _cmp_dyadic(self.man, self.exp, m, e)
        if isinstance(other, Rational):
            a = to_fraction(self)
            return (a > other) - (a < other)
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else (c is not None and c < 0)

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else (c is not None and c <= 0)

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else (c is not None and c > 0)

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else (c is not None and c >= 0)

    def __hash__(self):
        if self.inf:
            return hash(math.copysign(_INF, self.inf))
        return hash(to_fraction(self))

    def __repr__(self):
        if self.inf:
            text = "inf" if self.inf > 0 else "-inf"
        else:
            text = _hex_dyadic(self.man, self.exp)
        return f"BigFloat('{text}', prec={self.prec})"

    def __str__(self):
        return repr(self)


def _hex_dyadic(man, exp):
    """Shortest exact ``0x1.hhhp+e`` spelling of ``man * 2**exp``."""
    if man == 0:
        return "0x0p+0"
    sign = "-" if man < 0 else ""
    man = abs(man)
    frac_bits = man.bit_length() - 1
    e = exp + frac_bits
    frac = man - (1 << frac_bits)
    # pad fraction to a whole number of nibbles, then drop trailing zero nibbles
    nib = -(-frac_bits // 4)
    frac <<= nib * 4 - frac_bits
    digits = format(frac, "0{}x".format(nib)) if nib else ""
    digits = digits.rstrip("0")
    body = "0x1." + digits if digits else "0x1"
    return f"{sign}{body}p{e:+d}"


class EndpointFormat:
    """Directed arithmetic for one endpoint format.

    Subclasses provide ``_build`` / ``_parts`` and the special values; all
    arithmetic here is exact integer arithmetic followed by one rounding.
    """

    name = "?"
    precision = 0
    emin = None      # exponent of the smallest ulp (gradual underflow), if any
    emax = 0         # finite values satisfy |x| < 2**emax
    min_top = None   # smallest leading-bit exponent without gradual underflow

    # hooks ---------------------------------------------------------------------
    def _build(self, man, exp):
        raise NotImplementedError

    def _parts(self, v):
        raise NotImplementedError

    def owns(self, v):
        """True if ``v`` is a value of this format."""
        raise NotImplementedError

    @property
    def rank(self):
        return (self.precision, self.emax)

    def __repr__(self):
        return f"<endpoint format {self.name}>"

    # special values ------------------------------------------------------------
    @functools.cached_property
    def max_value(self):
        return self._build((1 << self.precision) - 1, self.emax - self.precision)

    @functools.cached_property
    def min_positive(self):
        if self.emin is not None:
            return self._build(1, self.emin)
        return self._build(1 << (self.precision - 1), self.min_top - self.precision)

    def is_inf(self, v):
        return infsign(v) != 0

    def to_fraction(self, v):
        return to_fraction(v)

    # rounding ------------------------------------------------------------------
    def _overflow(self, negative, rnd):
        if negative:
            return self.neg_inf if rnd is not UP else -self.max_value
        return self.pos_inf if rnd is not DOWN else self.max_value

    def _round(self, man, exp, rnd, sticky=False):
        """Round a dyadic (plus sticky) into this format: ``(value, exact)``."""
        if man == 0:
            return self.zero, True
        m, e, inexact = _round_bits(man, exp, self.precision, self.emin, rnd, sticky)
        if m == 0:
            return self.zero, False
        top = e + abs(m).bit_length()
        if top > self.emax:
            return self._overflow(m < 0, rnd), False
        if self.min_top is not None and top < self.min_top:
            # no gradual underflow: collapse to zero or the smallest magnitude
            if rnd is NEAREST or (rnd is UP) == (m < 0):
                return self.zero, False
            return (-self.min_positive if m < 0 else self.min_positive), False
        return self._build(m, e), not inexact

    def from_dyadic(self, man, exp, rnd):
        return self._round(man, exp, rnd)[0]

    def from_rational(self, p, q, rnd, exp=0):
        """Directed rounding of ``p/q * 2**exp``; returns ``(value, exact)``."""
        if q == 0:
            raise ZeroDivisionError("zero denominator")
        if q < 0:
            p, q = -p, -q
        if p == 0:
            return self.zero, True
        a = abs(p)
        k = self.precision + 3 - (a.bit_length() - q.bit_length())
        if k >= 0:
            quo, rem = divmod(a << k, q)
        else:
            quo, rem = divmod(a, q << -k)
        return self._round(-quo if p < 0 else quo, exp - k, rnd, sticky=rem != 0)

    def convert(self, v, rnd):
        """Directed conversion of any endpoint or Python number into this format."""
        if self.owns(v):
            return v
        s = infsign(v)
        if s:
            return self.pos_inf if s > 0 else self.neg_inf
        if isinstance(v, float) and v != v:
            raise UndefinedOperation("NaN is not an endpoint")
        if isinstance(v, (float, int, BigFloat)):
            m, e = as_dyadic(v)
            return self._round(m, e, rnd)[0]
        if isinstance(v, Rational):
            return self.from_rational(v.numerator, v.denominator, rnd)[0]
        raise TypeError(f"cannot convert {type(v).__name__} to an endpoint")

    def convert_exact(self, v, rnd):
        """Like :meth:`convert` but also reports exactness."""
        s = infsign(v)
        if s:
            return (self.pos_inf if s > 0 else self.neg_inf), True
        if isinstance(v, float) and v != v:
            raise UndefinedOperation("NaN is not an endpoint")
        if isinstance(v, (float, int, BigFloat)):
            m, e = as_dyadic(v)
            return self._round(m, e, rnd)
        if isinstance(v, Rational):
            return self.from_rational(v.numerator, v.denominator, rnd)
        raise TypeError(f"cannot convert {type(v).__name__} to an endpoint")

    # neighbours ---------------------------------------------------------------
    def next_up(self, v):
        s = infsign(v)
        if s > 0:
            return v
        if s < 0:
            return -self.max_value
        m, e = self._parts(v)
        if m == 0:
            return self.min_positive
        sh = self.precision + 2 - abs(m).bit_length()
        if sh > 0:
            m <<= sh
            e -= sh
        return self._round(m if m > 0 else m + 1, e, UP, sticky=True)[0]

    def next_down(self, v):
        return -self.next_up(-v)

    # directed kernels -------------------------------------------------------------
    def add(self, a, b, rnd):
        sa, sb = infsign(a), infsign(b)
        if sa or sb:
            if sa and sb and sa != sb:
                raise UndefinedOperation("inf + (-inf)")
            return self.pos_inf if (sa or sb) > 0 else self.neg_inf
        ma, ea = self._parts(a)
        mb, eb = self._parts(b)
        m, e, sticky = _exact_sum(ma, ea, mb, eb, self.precision)
        return self._round(m, e, rnd, sticky)[0]

    def sub(self, a, b, rnd):
        return self.add(a, -b, rnd)

    def mul(self, a, b, rnd):
        sa, sb = infsign(a), infsign(b)
        if sa or sb:
            if (not sa and a == 0) or (not sb and b == 0):
                raise UndefinedOperation("0 * inf")
            neg = (a < 0) != (b < 0)
            return self.neg_inf if neg else self.pos_inf
        ma, ea = self._parts(a)
        mb, eb = self._parts(b)
        return self._round(ma * mb, ea + eb, rnd)[0]

    def div(self, a, b, rnd):
        sa, sb = infsign(a), infsign(b)
        if sb:
            if sa:
                raise UndefinedOperation("inf / inf")
            return self.zero
        if b == 0:
            raise UndefinedOperation("division by zero")
        if sa:
            return self.neg_inf if (sa < 0) != (b < 0) else self.pos_inf
        ma, ea = self._parts(a)
        mb, eb = self._parts(b)
        return self.from_rational(ma, mb, rnd, ea - eb)[0]

    def sqrt(self, a, rnd):
        if a < 0:
            raise UndefinedOperation("sqrt of a negative number")
        if infsign(a):
            return a
        m, e = self._parts(a)
        if m == 0:
            return self.zero
        sh = max(0, 2 * (self.precision + 2) - m.bit_length())
        if (e - sh) & 1:
            sh += 1
        m <<= sh
        e -= sh
        r = math.isqrt(m)
        return self._round(r, e // 2, rnd, sticky=r * r != m)[0]

    def fma(self, a, b, c, rnd):
        sa, sb, sc = infsign(a), infsign(b), infsign(c)
        if sa or sb:
            if (not sa and a == 0) or (not sb and b == 0):
                raise UndefinedOperation("0 * inf")
            sp = -1 if (a < 0) != (b < 0) else 1
            if sc and sc != sp:
                raise UndefinedOperation("inf + (-inf)")
            return self.pos_inf if sp > 0 else self.neg_inf
        if sc:
            return c
        ma, ea = self._parts(a)
        mb, eb = self._parts(b)
        mc, ec = self._parts(c)
        m, e, sticky = _exact_sum(ma * mb, ea + eb, mc, ec, self.precision)
        return self._round(m, e, rnd, sticky)[0]

    def pow_int(self, a, n, rnd):
        """Directed ``a**n`` for an integer ``n`` (``0**0 == 1``)."""
        if n == 0:
            return self.one
        s = infsign(a)
        if s or a == 0:
            if n < 0:
                if s:
                    return self.zero
                raise UndefinedOperation("zero to a negative power")
            if not s:
                return self.zero
            return self.neg_inf if (s < 0 and n & 1) else self.pos_inf
        m, e = self._parts(a)
        if n > 0:
            return self._round(m ** n, e * n, rnd)[0]
        return self.from_rational(1, m ** -n, rnd, e * n)[0]

    def root_int(self, a, n, rnd):
        """Directed ``a**(1/n)`` for ``n >= 1`` and ``a >= 0``."""
        if infsign(a) or a == 0 or n == 1:
            return a
        if a < 0:
            raise UndefinedOperation("even root of a negative number")
        m, e = self._parts(a)
        # m * 2**e with e divisible by n and enough bits for prec + 2 result bits
        sh = max(0, n * (self.precision + 2) - m.bit_length())
        sh += (e - sh) % n
        m <<= sh
        e -= sh
        r = _iroot(m, n)
        return self._round(r, e // n, rnd, sticky=r ** n != m)[0]

    def mid(self, lo, hi):
        """Midpoint of ``[lo, hi]`` rounded to nearest-even; ``mid(entire) == 0``."""
        slo, shi = infsign(lo), infsign(hi)
        if slo and shi:
            return self.zero
        if slo:
            return -self.max_value
        if shi:
            return self.max_value
        ma, ea = self._parts(lo)
        mb, eb = self._parts(hi)
        m, e, sticky = _exact_sum(ma, ea, mb, eb, self.precision)
        return self._round(m, e - 1, NEAREST, sticky)[0]


def _iroot(m, n):
    """floor(m ** (1/n)) for m >= 0."""
    if m < 2:
        return m
    if n == 2:
        return math.isqrt(m)
    x = 1 << -(-m.bit_length() // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > m:
        x -= 1
    while (x + 1) ** n <= m:
        x += 1
    return x


class _IEEEFormat(EndpointFormat):
    """Binary formats whose values are stored as Python floats."""

    zero = 0.0
    one = 1.0
    pos_inf = _INF
    neg_inf = -_INF

    def __init__(self, name, precision, emin, emax):
        self.name = name
        self.precision = precision
        self.emin = emin
        self.emax = emax

    def _build(self, man, exp):
        return math.ldexp(man, exp)

    def _parts(self, v):
        return _float_parts(v)

    def owns(self, v):
        return isinstance(v, float) and self._representable(v)

    def _representable(self, v):
        if v != v:
            return False
        if v - v != 0 or v == 0:
            return True
        m, e = _float_parts(v)
        r, _, inexact = _round_bits(m, e, self.precision, self.emin, NEAREST)
        return not inexact and abs(v) < 2.0 ** self.emax


class _Binary64(_IEEEFormat):
    """binary64 with error-free-transformation fast paths."""

    def __init__(self):
        super().__init__("binary64", 53, -1074, 1024)

    def owns(self, v):
        return isinstance(v, float) and v == v

    def next_up(self, v):
        return math.nextafter(v, _INF)

    def next_down(self, v):
        return math.nextafter(v, -_INF)

    def add(self, a, b, rnd):
        s = a + b
        if s - s == 0:
            bb = s - a
            err = (a - (s - bb)) + (b - bb)
            if err == 0:
                return s
            if rnd is UP:
                return s if err < 0 else math.nextafter(s, _INF)
            return s if err > 0 else math.nextafter(s, -_INF)
        return self._add_special(a, b, s, rnd)

    def sub(self, a, b, rnd):
        return self.add(a, -b, rnd)

    def _add_special(self, a, b, s, rnd):
        if a != a or b != b:
            raise UndefinedOperation("NaN operand")
        if a - a != 0 or b - b != 0:
            if a == -b:
                raise UndefinedOperation("inf + (-inf)")
            return a if a - a != 0 else b
        return self._overflow(s < 0, rnd)

    def mul(self, a, b, rnd):
        p = a * b
        ap = abs(p)
        if 2.0 ** -968 <= ap < _INF and abs(a) < 2.0 ** 995 and abs(b) < 2.0 ** 995:
            c = 134217729.0 * a
            ah = c - (c - a)
            al = a - ah
            c = 134217729.0 * b
            bh = c - (c - b)
            bl = b - bh
            err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
            if err == 0:
                return p
            if rnd is UP:
                return p if err < 0 else math.nextafter(p, _INF)
            return p if err > 0 else math.nextafter(p, -_INF)
        if p == 0 and (a == 0 or b == 0):
            return 0.0
        return EndpointFormat.mul(self, a, b, rnd)

    def div(self, a, b, rnd):
        q = a / b if b != 0 else _INF
        aq = abs(q)
        ab = abs(b)
        if (2.0 ** -480 <= aq <= 2.0 ** 480 and 2.0 ** -480 <= ab <= 2.0 ** 480):
            c = 134217729.0 * q
            qh = c - (c - q)
            ql = q - qh
            c = 134217729.0 * b
            bh = c - (c - b)
            bl = b - bh
            ph = q * b
            pl = ((qh * bh - ph) + qh * bl + ql * bh) + ql * bl
            r = (a - ph) - pl
            if r == 0:
                return q
            # exact quotient = q + r / b
            up = (r > 0) == (b > 0)
            if rnd is UP:
                return math.nextafter(q, _INF) if up else q
            return q if up else math.nextafter(q, -_INF)
        if a == 0 and b != 0 and b == b:
            return 0.0
        return EndpointFormat.div(self, a, b, rnd)

    def sqrt(self, a, rnd):
        if 2.0 ** -960 <= a <= 2.0 ** 960:
            s = math.sqrt(a)
            c = 134217729.0 * s
            sh = c - (c - s)
            sl = s - sh
            ph = s * s
            pl = ((sh * sh - ph) + 2.0 * sh * sl) + sl * sl
            r = (a - ph) - pl
            if r == 0:
                return s
            if rnd is UP:
                return math.nextafter(s, _INF) if r > 0 else s
            return s if r > 0 else math.nextafter(s, -_INF)
        return EndpointFormat.sqrt(self, a, rnd)

    def mid(self, lo, hi):
        if -2.0 ** 1020 < lo and hi < 2.0 ** 1020 and (abs(lo) > 2.0 ** -1020 or lo == 0) \
                and (abs(hi) > 2.0 ** -1020 or hi == 0):
            return 0.5 * lo + 0.5 * hi
        return EndpointFormat.mid(self, lo, hi)


class BigFloatFormat(EndpointFormat):
    """Format object for :class:`BigFloat` values of one precision."""

    emax = BigFloat.EMAX
    min_top = BigFloat.EMIN

    def __init__(self, precision):
        self.precision = precision
        self.name = f"bigfloat:{precision}"
        self.zero = BigFloat._raw(0, 0, precision)
        self.one = BigFloat._raw(1 << (precision - 1), 1 - precision, precision)
        self.pos_inf = BigFloat._raw(0, 0, precision, 1)
        self.neg_inf = BigFloat._raw(0, 0, precision, -1)

    def _build(self, man, exp):
        return BigFloat._raw(man, exp, self.precision)

    def _parts(self, v):
        return v.man, v.exp

    def owns(self, v):
        return isinstance(v, BigFloat) and v.prec == self.precision

    def __reduce__(self):
        return (bigfloat, (self.precision,))


BINARY64 = _Binary64()
BINARY32 = _IEEEFormat("binary32", 24, -149, 128)


@functools.lru_cache(maxsize=None)
def bigfloat(precision=BigFloat.DEFAULT_PREC):
    """The (cached) :class:`BigFloat` format with ``precision`` significand bits."""
    if precision < 2:
        raise ValueError("BigFloat precision must be at least 2 bits")
    return BigFloatFormat(int(precision))


def parse_format(name):
    """Format from a name such as ``binary64``, ``binary32`` or ``bigfloat:256``."""
    name = name.strip().lower()
    if name in ("binary64", "double", "f64"):
        return BINARY64
    if name in ("binary32", "float", "f32"):
        return BINARY32
    if name.startswith("bigfloat"):
        _, _, bits = name.partition(":")
        return bigfloat(int(bits) if bits else BigFloat.DEFAULT_PREC)
    raise ValueError(f"unknown endpoint format {name!r}")


def format_of(v):
    """Natural format of an endpoint value: floats are binary64."""
    if isinstance(v, BigFloat):
        return bigfloat(v.prec)
    if isinstance(v, float):
        return BINARY64
    raise TypeError(f"{type(v).__name__} is not an endpoint value")


def common_format(*formats):
    """Widest of several formats (precision first, then exponent range)."""
    return max(formats, key=lambda f: f.rank)


def _fmt(fmt, *values):
    if fmt is not None:
        return fmt
    return common_format(*(format_of(v) for v in values))


# module-level directed operations ---------------------------------------------------------


def dir_add(a, b, rnd, fmt=None):
    return _fmt(fmt, a, b).add(a, b, rnd)


def dir_sub(a, b, rnd, fmt=None):
    return _fmt(fmt, a, b).sub(a, b, rnd)


def dir_mul(a, b, rnd, fmt=None):
    return _fmt(fmt, a, b).mul(a, b, rnd)


def dir_div(a, b, rnd, fmt=None):
    return _fmt(fmt, a, b).div(a, b, rnd)


def dir_sqrt(a, rnd, fmt=None):
    return _fmt(fmt, a).sqrt(a, rnd)


def dir_fma(a, b, c, rnd, fmt=None):
    return _fmt(fmt, a, b, c).fma(a, b, c, rnd)


def next_up(a, fmt=None):
    return _fmt(fmt, a).next_up(a)


def next_down(a, fmt=None):
    return _fmt(fmt, a).next_down(a)


def from_rational(p, q, rnd, fmt=BINARY64):
    """Directed conversion of ``p/q``; returns ``(value, exact)``."""
    if q <= 0:
        raise ValueError("denominator must be positive")
    return fmt.from_rational(p, q, rnd)


def convert(a, fmt, rnd):
    return fmt.convert(a, rnd)
