"""Set-based interval arithmetic with directed rounding over several endpoint formats.

>>> from intervalkit import Interval, sin
>>> x, y = Interval(2.0, 3.0), Interval("[-1,2]")
>>> print((sin(x) - (y / x + 5.0) * y) * 0.05)
[-0.592944,0.345465]
"""

from .arith import (
    abs_, add, cancel_minus, cancel_plus, cos_rev, cosh_rev, div, div_to_pair, fma, mul,
    mul_rev, neg, pow, pown, pown_rev, sin_rev, sqr, sqr_rev, sqrt, sub, tan_rev, abs_rev,
)
from .elem import (
    acos, acosh, apply_monotone, asin, asinh, atan, atanh, cos, cosh, exp, log, log2, log10,
    pi_interval, pow_interval, sin, sinh, tan, tanh,
)
from .endpoint import (
    BINARY32, BINARY64, DOWN, UP, BigFloat, RoundingDirection, bigfloat, convert, dir_add,
    dir_div, dir_fma, dir_mul, dir_sqrt, dir_sub, from_rational, next_down, next_up,
    parse_format,
)
from .errors import (
    IntervalError, InvalidEndpoints, InvalidLiteral, MalformedLine, PrecisionMismatch,
    ResourceLimit, UndefinedOperation,
)
from .interval import (
    Interval, OverlapState, contains, disjoint, empty, entire, equal, hull, inf, interior,
    intersection, is_bounded, is_empty, is_entire, is_singleton, less, mag, make, mid, mig,
    overlap, precedes, promote, rad, strict_less, strict_precedes, subset, sup, wid,
)
from .newton import (
    IntervalPolynomial, LebesgueProblem, RootEnclosure, barycentric_weights, chebyshev_nodes,
    horner_eval, lebesgue_eval, newton_solve,
)
from .textio import (
    Accuracy, Format, format_interval, parse, read_sequence, try_parse, write_sequence,
)

__version__ = "0.1.0"
