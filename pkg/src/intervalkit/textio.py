"""Interval literals: parsing with accuracy reporting, formatting, sequence files.

Grammar accepted by :func:`try_parse` (surrounding whitespace ignored, keywords
case-insensitive)::

    [a,b]   [a]   []   [empty]   [entire]   m?   m?d   m?du   m?dd   m??   m?e3

where an endpoint is a decimal number, a rational ``p/q``, ``inf``/``infinity``
with an optional sign, or a C99 hex float such as ``-0x1.8p-3``.
"""

from __future__ import annotations

import dataclasses
import enum
import io
import math
import re
from fractions import Fraction

from .endpoint import BINARY64, DOWN, UP, _hex_dyadic, as_dyadic, bigfloat, infsign, to_fraction
from .errors import InvalidLiteral, MalformedLine
from .interval import Interval, empty, entire

__all__ = [
    "Accuracy", "Format", "try_parse", "parse", "format_interval",
    "write_sequence", "read_sequence", "format_endpoint", "DEFAULT_FORMAT", "HEX_FORMAT",
]

_new = Interval._new


class Accuracy(enum.IntEnum):
    """How faithfully a parsed interval represents the denoted set (ordered)."""

    INVALID = 0
    VALID = 1
    TIGHT = 2
    EXACT = 3


_NOTATIONS = ("auto", "fixed", "scientific", "hex")


@dataclasses.dataclass(frozen=True)
class Format:
    """Rendering options for :func:`format_interval`.

    ``precision`` counts significant digits in ``auto`` notation and digits
    after the decimal point in ``fixed`` and ``scientific`` notation (the
    conventions of C's ``%g``, ``%f`` and ``%e``).  ``pad`` keeps trailing
    zeros; ``border_slack`` puts spaces inside the brackets and
    ``center_slack`` after the comma.
    """

    precision: int = 6
    notation: str = "auto"
    pad: bool = False
    border_slack: int = 0
    center_slack: int = 0

    def __post_init__(self):
        if self.notation not in _NOTATIONS:
            raise ValueError(f"notation must be one of {', '.join(_NOTATIONS)}")
        if self.precision < 1:
            raise ValueError("precision must be at least 1")
        if self.border_slack < 0 or self.center_slack < 0:
            raise ValueError("slack must be non-negative")

    @classmethod
    def from_spec(cls, spec):
        """Build a format from a printf-like spec: ``[#][.N][g|f|e|a|A]``.

        ``#`` turns on padding and ``a``/``A`` selects hex, so ``"A"`` gives
        bit-exact output and ``"#.10e"`` gives padded scientific output.
        """
        m = re.fullmatch(r"(#?)(?:\.(\d+))?([gfeaA]?)", spec)
        if not m:
            raise ValueError(f"invalid interval format spec {spec!r}")
        pad, prec, kind = m.groups()
        notation = {"": "auto", "g": "auto", "f": "fixed", "e": "scientific",
                    "a": "hex", "A": "hex"}[kind]
        return cls(precision=int(prec) if prec else 6, notation=notation, pad=bool(pad))


DEFAULT_FORMAT = Format()
HEX_FORMAT = Format(notation="hex")


# -- parsing ------------------------------------------------------------------------

_DEC = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RAT = r"[+-]?\d+/\d+"
_HEX = r"[+-]?0[xX](?:[0-9a-fA-F]+\.?[0-9a-fA-F]*|\.[0-9a-fA-F]+)(?:[pP][+-]?\d+)?"
_INF = r"[+-]?inf(?:inity)?"
_NUMBER = re.compile(rf"(?:(?P<hex>{_HEX})|(?P<rat>{_RAT})|(?P<dec>{_DEC})|(?P<inf>{_INF}))", re.I)
_UNCERTAIN = re.compile(
    r"(?P<sign>[+-]?)(?P<int>\d*)(?:\.(?P<frac>\d*))?\?(?P<rad>\d*|\?)(?P<dir>[ud]?)"
    r"(?:[eE](?P<exp>[+-]?\d+))?",
    re.I,
)

_LOG10_2 = math.log10(2)

# decimal exponents beyond this are evaluated by directed powering, not exactly
_EXACT_EXP10 = 20000
# formats this narrow overflow or underflow on any such literal
_SATURATING_EMAX = 1 << 16


class _Huge:
    """A decimal ``digits * 10**exp`` too large to expand exactly."""

    __slots__ = ("digits", "exp")

    def __init__(self, digits, exp):
        self.digits, self.exp = digits, exp


def _int10(digits):
    """int() of a decimal digit string of any length (no str-digit limit)."""
    if len(digits) <= 4000:
        return int(digits or "0")
    half = len(digits) // 2
    return _int10(digits[:-half]) * 10 ** half + _int10(digits[-half:])


def _str10(n):
    """str() of a non-negative int of any size."""
    if n < 10 ** 4000:
        return str(n)
    half = (n.bit_length() * 3 // 10) // 2
    hi, lo = divmod(n, 10 ** half)
    return _str10(hi) + _str10(lo).rjust(half, "0")


def _number(text):
    """Exact value of an endpoint literal: Fraction, ±inf float, _Huge or None."""
    m = _NUMBER.fullmatch(text)
    if not m:
        return None
    if m["inf"]:
        return -math.inf if text.startswith("-") else math.inf
    if m["rat"]:
        p, q = text.split("/")
        p, q = _int10(p.lstrip("+")) if p[0] != "-" else -_int10(p[1:]), _int10(q)
        return Fraction(p, q) if q else None
    if m["hex"]:
        return _hex_value(text)
    mant, _, exp = text.lower().partition("e")
    whole, _, frac = mant.partition(".")
    digits = _int10((whole + frac).lstrip("+-"))
    if mant.startswith("-"):
        digits = -digits
    k = (int(exp) if exp else 0) - len(frac)
    if digits == 0:
        return Fraction(0)
    if k > _EXACT_EXP10 or k + abs(digits).bit_length() * _LOG10_2 < -_EXACT_EXP10:
        return _Huge(digits, k)
    return Fraction(digits * 10 ** k) if k >= 0 else Fraction(digits, 10 ** -k)


def _hex_value(text):
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("+-")[2:].lower()
    mant, _, exp = body.partition("p")
    whole, _, frac = mant.partition(".")
    man = int((whole + frac) or "0", 16)
    e = (int(exp) if exp else 0) - 4 * len(frac)
    if abs(e) > 1 << 31:
        return None
    return sign * (Fraction(man << e) if e >= 0 else Fraction(man, 1 << -e))


def _pow10_dir(k, f, rnd):
    """Directed 10**k (k may be negative) by repeated squaring in format ``f``."""
    n = abs(k)
    # 1/10**n rounds in the opposite direction of 10**n
    inner = rnd if k > 0 else rnd.flip()
    result, base = f.one, f.convert(10, inner)
    while n:
        if n & 1:
            result = f.mul(result, base, inner)
        n >>= 1
        if n:
            base = f.mul(base, base, inner)
    return result if k > 0 else f.div(f.one, result, rnd)


def _endpoint(value, fmt, rnd):
    """Directed conversion of a parsed endpoint: ``(endpoint, exact)``."""
    if isinstance(value, _Huge):
        if fmt.emax < _SATURATING_EMAX:
            big = value.exp > 0
            neg = value.digits < 0
            if big:
                far = fmt.neg_inf if neg else fmt.pos_inf
                near = -fmt.max_value if neg else fmt.max_value
                down = rnd is DOWN
                return ((far if down else near) if neg else (near if down else far)), False
            tiny = -fmt.min_positive if neg else fmt.min_positive
            if neg:
                return (tiny if rnd is DOWN else fmt.zero), False
            return (fmt.zero if rnd is DOWN else tiny), False
        wide = bigfloat(fmt.precision + 64)
        p = _pow10_dir(value.exp, wide, rnd if value.digits > 0 else rnd.flip())
        v = wide.mul(wide.convert(value.digits, rnd), p, rnd)
        return fmt.convert(v, rnd), False
    if isinstance(value, float):
        return (fmt.pos_inf if value > 0 else fmt.neg_inf), True
    return fmt.from_rational(value.numerator, value.denominator, rnd)


def _decimal_parts(v):
    """``(p, q, k)`` with value p/q * 10**k for a finite parsed endpoint."""
    if isinstance(v, _Huge):
        return v.digits, 1, v.exp
    return v.numerator, v.denominator, 0


def _greater(a, b):
    """Exact ``a > b`` for parsed endpoint values (infinities included)."""
    sa, sb = infsign(a) if isinstance(a, float) else 0, infsign(b) if isinstance(b, float) else 0
    if sa or sb:
        return sa > sb
    p1, q1, k1 = _decimal_parts(a)
    p2, q2, k2 = _decimal_parts(b)
    if (p1 > 0) != (p2 > 0) or p1 == 0 or p2 == 0:
        return p1 * q2 > p2 * q1 if k1 == k2 else (p1 > 0) - (p1 < 0) > (p2 > 0) - (p2 < 0)
    # same sign: a cheap magnitude estimate settles all but near ties
    est1 = (abs(p1).bit_length() - q1.bit_length()) * _LOG10_2 + k1
    est2 = (abs(p2).bit_length() - q2.bit_length()) * _LOG10_2 + k2
    if abs(est1 - est2) > 3:
        return (est1 > est2) == (p1 > 0)
    m = min(k1, k2)
    return p1 * q2 * 10 ** (k1 - m) > p2 * q1 * 10 ** (k2 - m)


def _from_bounds(a, b, fmt):
    if a is None or b is None:
        return empty(fmt), Accuracy.INVALID
    if a == math.inf or b == -math.inf or _greater(a, b):
        return empty(fmt), Accuracy.INVALID
    lo, ex_lo = _endpoint(a, fmt, DOWN)
    hi, ex_hi = _endpoint(b, fmt, UP)
    if (isinstance(a, _Huge) or isinstance(b, _Huge)) and fmt.emax >= _SATURATING_EMAX:
        acc = Accuracy.VALID  # powered out rather than rounded once
    else:
        acc = Accuracy.EXACT if ex_lo and ex_hi else Accuracy.TIGHT
    return _new(lo, hi, fmt), acc


def _uncertain(m, fmt):
    frac = m["frac"] or ""
    if not (m["int"] or frac):
        return empty(fmt), Accuracy.INVALID
    digits = _int10(m["int"] + frac)
    center = Fraction(-digits if m["sign"] == "-" else digits, 10 ** len(frac))
    unit = Fraction(1, 10 ** len(frac))
    if m["exp"] and abs(int(m["exp"])) > _EXACT_EXP10:
        return empty(fmt), Accuracy.INVALID
    scale = Fraction(10) ** int(m["exp"]) if m["exp"] else Fraction(1)
    if m["rad"] == "?":  # unbounded radius
        lo, hi = -math.inf, math.inf
    else:
        r = unit * _int10(m["rad"]) if m["rad"] else unit / 2
        lo, hi = (center - r) * scale, (center + r) * scale
    d = m["dir"].lower()
    if d == "u":
        lo = center * scale
    elif d == "d":
        hi = center * scale
    return _from_bounds(lo, hi, fmt)


def try_parse(text, fmt=BINARY64):
    try:
        return _try_parse(text, fmt)
    except (ValueError, OverflowError, ZeroDivisionError):
        return empty(fmt), Accuracy.INVALID


def _try_parse(text, fmt):
    """Parse an interval literal into ``(interval, accuracy)``; never raises.

    Endpoints are rounded outward into ``fmt``.  Unparseable input gives
    ``(empty, Accuracy.INVALID)``.
    """
    try:
        if isinstance(text, (bytes, bytearray)):
            text = text.decode("utf-8")
        s = text.strip()
    except (UnicodeDecodeError, AttributeError):
        return empty(fmt), Accuracy.INVALID
    if s.startswith("[") and s.endswith("]"):
        body = s[1:-1].strip()
        key = body.lower()
        if key in ("", "empty"):
            return empty(fmt), Accuracy.EXACT
        if key == "entire":
            return entire(fmt), Accuracy.EXACT
        parts = [p.strip() for p in body.split(",")]
        if len(parts) == 1:
            v = _number(parts[0])
            return _from_bounds(v, v, fmt)
        if len(parts) == 2:
            a = _number(parts[0]) if parts[0] else -math.inf
            b = _number(parts[1]) if parts[1] else math.inf
            return _from_bounds(a, b, fmt)
        return empty(fmt), Accuracy.INVALID
    m = _UNCERTAIN.fullmatch(s)
    if m:
        return _uncertain(m, fmt)
    return empty(fmt), Accuracy.INVALID


def parse(text, fmt=BINARY64):
    """Parse an interval literal, raising :class:`InvalidLiteral` on failure."""
    x, acc = try_parse(text, fmt)
    if acc is Accuracy.INVALID:
        raise InvalidLiteral(f"not an interval literal: {text!r}")
    return x


# -- formatting -------------------------------------------------------------------


def _floor_log10(q):
    """floor(log10(q)) for a positive Fraction, without decimal expansion."""
    n, d = q.numerator, q.denominator
    x = math.floor((n.bit_length() - d.bit_length()) * _LOG10_2)
    while _pow10_ge(n, d, x + 1):
        x += 1
    while not _pow10_ge(n, d, x):
        x -= 1
    return x


def _pow10_ge(n, d, x):
    """n/d >= 10**x ?"""
    return n * 10 ** -x >= d if x < 0 else n >= d * 10 ** x


def _round_scaled(q, shift, up):
    """Directed integer rounding of q * 10**shift."""
    if shift >= 0:
        n, d = q.numerator * 10 ** shift, q.denominator
    else:
        n, d = q.numerator, q.denominator * 10 ** -shift
    return -(-n // d) if up else n // d


def _digits_str(n, decimals):
    s = _str10(n).rjust(decimals + 1, "0")
    return (s[:-decimals] + "." + s[-decimals:]) if decimals else s


def _trim(s, pad):
    if pad or "." not in s:
        return s
    return s.rstrip("0").rstrip(".")


def _exp_str(x):
    return f"e{x:+d}" if x > 0 else f"e{x}"


def _format_decimal(v, f, rnd):
    q = to_fraction(v)
    if q == 0:
        if f.notation == "fixed":
            return _trim(_digits_str(0, f.precision), f.pad)
        if f.notation == "scientific":
            return _trim(_digits_str(0, f.precision), f.pad) + "e0"
        return _trim(_digits_str(0, f.precision - 1), f.pad)
    neg = q < 0
    a = -q if neg else q
    up = (rnd is UP) != neg  # magnitude rounding direction
    sign = "-" if neg else ""
    if f.notation == "fixed":
        n = _round_scaled(a, f.precision, up)
        return sign + _trim(_digits_str(n, f.precision), f.pad)
    sig = f.precision + 1 if f.notation == "scientific" else f.precision
    x = _floor_log10(a)
    n = _round_scaled(a, sig - 1 - x, up)
    if n >= 10 ** sig:  # rounding carried into a new digit
        x += 1
        n = _round_scaled(a, sig - 1 - x, up)
    if f.notation == "auto" and -4 <= x < sig:
        decimals = sig - 1 - x
        if decimals >= 0:
            return sign + _trim(_digits_str(n, decimals), f.pad)
    return sign + _trim(_digits_str(n, sig - 1), f.pad) + _exp_str(x)


def format_endpoint(v, f=DEFAULT_FORMAT, rnd=DOWN):
    """Text for one endpoint, rounded in direction ``rnd`` (decimal notations)."""
    s = infsign(v)
    if s:
        return "inf" if s > 0 else "-inf"
    if f.notation == "hex":
        return _hex_dyadic(*as_dyadic(v))
    return _format_decimal(v, f, rnd)


def format_interval(x, f=DEFAULT_FORMAT):
    """Render ``x``; decimal output is rounded outward so it still encloses ``x``."""
    pad = " " * f.border_slack
    if x.lo is None:
        return f"[{pad}empty{pad}]"
    if infsign(x.lo) < 0 and infsign(x.hi) > 0:
        return f"[{pad}entire{pad}]"
    lo = format_endpoint(x.lo, f, DOWN)
    hi = format_endpoint(x.hi, f, UP)
    return f"[{pad}{lo},{' ' * f.center_slack}{hi}{pad}]"


# -- sequence files ---------------------------------------------------------------


def write_sequence(xs, sink, f=DEFAULT_FORMAT):
    """Write one interval per line to a text or binary stream; returns the count."""
    binary = not isinstance(sink, io.TextIOBase) and "b" in getattr(sink, "mode", "b")
    count = 0
    for x in xs:
        line = format_interval(x, f) + "\n"
        sink.write(line.encode("utf-8") if binary else line)
        count += 1
    return count


def read_sequence(source, fmt=BINARY64):
    """Read intervals, one per line, skipping blank and ``#`` comment lines.

    Returns ``(intervals, accuracy)`` where accuracy is the weakest seen.
    Raises :class:`MalformedLine` on the first unparseable line.
    """
    out = []
    worst = Accuracy.EXACT
    for lineno, raw in enumerate(source, 1):
        line = raw.decode("utf-8", "replace") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        x, acc = try_parse(line, fmt)
        if acc is Accuracy.INVALID:
            raise MalformedLine(lineno, line)
        out.append(x)
        worst = min(worst, acc)
    return out, worst
