"""Acceptance criteria C1-C9, each at its stated size and tolerance.

Every test records a pass/fail line; the terminal summary lists one line per
criterion.  The fuzz-based criteria (C3, C9) take several minutes each.
"""

import io
import json
import math
import random
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

import fuzz
import oracles
from intervalkit import (
    BINARY64, DOWN, UP, Accuracy, Format, Interval, arith, bigfloat, elem,
    format_interval, newton_solve, promote, try_parse,
)
from intervalkit.cli import main, run_bench_lebesgue
from intervalkit.endpoint import (
    dir_add, dir_div, dir_fma, dir_mul, dir_sqrt, dir_sub, infsign, to_fraction,
)
from intervalkit.interval import overlap
from intervalkit.newton import (
    IntervalPolynomial, LebesgueProblem, barycentric_weights, lebesgue_eval,
)
from intervalkit.textio import HEX_FORMAT

B256 = bigfloat(256)
GOLDEN_EXPR = "(sin(x) - (y/x + 5.0)*y)*0.05"
GOLDEN_DEFAULT = "[-0.592944,0.345465]"
GOLDEN_SCI = ["[-5.929439996e-1,3.4546487135e-1]", "[-8.2293866866e-2,1.9882190431e-1]"]
GOLDEN_PADDED = ["[  -5.9294399960e-1, 3.4546487135e-1  ]",
                 "[  -8.2293866866e-2, 1.9882190431e-1  ]"]


def _run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


# -- C1 ------------------------------------------------------------------------------------

@pytest.mark.criterion("C1", "golden iteration output (default, scientific, padded)")
def test_c1_golden_lines(criterion):
    base = ["iterate", GOLDEN_EXPR, "x=[2,3]", "y=[-1,2]", "--var", "y"]
    t0 = time.perf_counter()
    code, text = _run(base)
    elapsed = time.perf_counter() - t0
    lines = text.splitlines()
    criterion.check(code == 0 and len(lines) == 10, "ten lines printed")
    criterion.check(lines[0] == GOLDEN_DEFAULT, f"default line {lines[0]!r}")
    _, sci = _run(base + ["--iterations", "2", "--precision", "10", "--notation", "sci"])
    criterion.check(sci.splitlines() == GOLDEN_SCI, f"scientific lines {sci.splitlines()}")
    _, padded = _run(base + ["--iterations", "2", "--precision", "10", "--notation", "sci",
                             "--pad", "--border-slack", "2", "--center-slack", "1"])
    criterion.check(padded.splitlines() == GOLDEN_PADDED, f"padded lines {padded.splitlines()}")
    criterion.check(elapsed < 1.0, f"runtime {elapsed:.3f} s")
    assert code == 0 and lines[0] == GOLDEN_DEFAULT
    assert sci.splitlines() == GOLDEN_SCI
    assert padded.splitlines() == GOLDEN_PADDED
    assert elapsed < 1.0

    # the same through the library API
    x, y = Interval(2.0, 3.0), Interval("[-1,2]")
    y = (elem.sin(x) - (y / x + 5.0) * y) * 0.05
    assert str(y) == GOLDEN_DEFAULT
    f = Format(precision=10, notation="scientific", pad=True, border_slack=2, center_slack=1)
    assert format_interval(y, f) == GOLDEN_PADDED[0]


# -- C2 ------------------------------------------------------------------------------------

N_PAIRS = 10 ** 5


def _random_doubles(rng, n):
    """A mix of raw bit patterns (every binade, subnormals), moderate values and zeros."""
    bits = rng.integers(0, 0x7FF0000000000000, n, dtype=np.int64).view(np.float64)
    signs = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    raw = bits * signs
    moderate = rng.standard_normal(n) * 10.0 ** rng.integers(-8, 9, n)
    kind = rng.random(n)
    out = np.where(kind < 0.4, raw, moderate)
    out = np.where(kind > 0.98, 0.0, out)
    return out


def _pairs(seed):
    rng = np.random.default_rng(seed)
    a = _random_doubles(rng, N_PAIRS)
    b = _random_doubles(rng, N_PAIRS)
    # near-cancellation and equal-exponent partners stress the error terms
    near = rng.random(N_PAIRS) < 0.15
    b = np.where(near, -a * (1 + rng.standard_normal(N_PAIRS) * 2.0 ** -30), b)
    return a.tolist(), b.tolist()


def _check_kernel(name, kernel, oracle, args_list):
    bad = []
    for args in args_list:
        exact = oracle(*[Fraction(v) for v in args])
        for rnd, ref in ((DOWN, oracles.round_down), (UP, oracles.round_up)):
            got = kernel(*args, rnd)
            want = ref(exact)
            if got != want and len(bad) < 5:
                bad.append((args, rnd.name, got, want))
    return bad


@pytest.mark.criterion("C2", "directed binary64 kernels match the rational oracle exactly")
@pytest.mark.parametrize("name", ["add", "sub", "mul", "div", "sqrt", "fma"])
def test_c2_directed_kernels(criterion, name):
    a, b = _pairs(["add", "sub", "mul", "div", "sqrt", "fma"].index(name))
    if name == "sqrt":
        xs = [abs(v) for v in a]
        bad = []
        for x in xs:
            exact = Fraction(x)
            lo, hi = dir_sqrt(x, DOWN), dir_sqrt(x, UP)
            want = (oracles.sqrt_down(exact), oracles.sqrt_up(exact))
            if (lo, hi) != want and len(bad) < 5:
                bad.append((x, (lo, hi), want))
    elif name == "fma":
        rng = random.Random(7)
        c = [rng.choice(b) * rng.choice([1.0, 2.0 ** -60, 2.0 ** 60]) for _ in a]
        c = [v if math.isfinite(v) else 1.0 for v in c]
        bad = _check_kernel(name, dir_fma, lambda p, q, r: p * q + r, list(zip(a, b, c)))
    else:
        kernel = {"add": dir_add, "sub": dir_sub, "mul": dir_mul, "div": dir_div}[name]
        oracle = {"add": lambda p, q: p + q, "sub": lambda p, q: p - q,
                  "mul": lambda p, q: p * q, "div": lambda p, q: p / q}[name]
        pairs = [(p, q) for p, q in zip(a, b) if not (name == "div" and q == 0)]
        bad = _check_kernel(name, kernel, oracle, pairs)
    criterion.check(not bad, f"{name}: {N_PAIRS} random operand sets, mismatches {bad}")
    assert not bad


# -- C3 / C9 containment fuzz ---------------------------------------------------------------

N_SETS = 10 ** 5
N_SAMPLES = 100


def _fuzz(criterion, name, fmt):
    op = fuzz.OPS_BY_NAME[name]
    t0 = time.perf_counter()
    rep = fuzz.fuzz(op, N_SETS, N_SAMPLES, fmt=fmt, seed=sorted(fuzz.OPS_BY_NAME).index(name))
    shown = [v for v in rep.violations if v is not None]
    criterion.check(not rep.violations,
                    f"{name} [{fmt.name}]: {rep.sets} sets x {rep.samples} samples, "
                    f"{rep.exact_checks} exact oracle checks "
                    f"({rep.unresolved} exact ties), violations {len(rep.violations)} {shown} "
                    f"in {time.perf_counter() - t0:.0f} s")
    assert not rep.violations


@pytest.mark.criterion("C3", "containment fuzz, binary64")
@pytest.mark.parametrize("name", [op.name for op in fuzz.ALL_OPS])
def test_c3_containment(criterion, name):
    _fuzz(criterion, name, BINARY64)


# -- C4 ------------------------------------------------------------------------------------

N_TIGHT = 10 ** 4
_MONO_UP = ["exp", "log", "log2", "log10", "atan", "asin", "sinh", "tanh", "asinh",
            "acosh", "atanh"]
_DOMAIN = {"log": (0, 1e3), "log2": (0, 1e3), "log10": (0, 1e3), "asin": (-1, 1),
           "acos": (-1, 1), "acosh": (1, 1e3), "atanh": (-1, 1)}
_MP = {"exp": mpmath.exp, "log": mpmath.log, "log2": lambda x: mpmath.log(x, 2),
       "log10": mpmath.log10, "sin": mpmath.sin, "cos": mpmath.cos, "tan": mpmath.tan,
       "asin": mpmath.asin, "acos": mpmath.acos, "atan": mpmath.atan, "sinh": mpmath.sinh,
       "cosh": mpmath.cosh, "tanh": mpmath.tanh, "asinh": mpmath.asinh,
       "acosh": mpmath.acosh, "atanh": mpmath.atanh}


def _true_range(name, a, b):
    """Exact image bounds of [a, b] at 200 bits, or None when it is unbounded."""
    f = _MP[name]
    A, B = mpmath.mpf(a), mpmath.mpf(b)
    if name in _MONO_UP:
        return f(A), f(B)
    if name == "acos":
        return f(B), f(A)
    if name == "cosh":
        lo = mpmath.mpf(1) if a <= 0 <= b else min(f(A), f(B))
        return lo, max(f(A), f(B))
    pi = mpmath.pi
    if name == "tan":
        if mpmath.floor((A - pi / 2) / pi) != mpmath.floor((B - pi / 2) / pi):
            return None
        return f(A), f(B)
    shift = pi / 2 if name == "sin" else 0   # location of the maxima
    vals = [f(A), f(B)]

    def hits(offset):
        return mpmath.ceil((A - offset) / (2 * pi)) <= mpmath.floor((B - offset) / (2 * pi))
    lo = mpmath.mpf(-1) if hits(shift + pi) else min(vals)
    hi = mpmath.mpf(1) if hits(shift) else max(vals)
    return lo, hi


def _ulps(err, ref):
    """``err`` measured in binary64 ulps at ``ref``."""
    if ref == 0 or not math.isfinite(ref):
        ref = 5e-324 if ref == 0 else 1.7976931348623157e308
    return float(err / mpmath.mpf(float(oracles.ulp(ref))))


def _random_box(rng, name):
    lo_d, hi_d = _DOMAIN.get(name, (-1e3, 1e3))
    kind = rng.random()
    if kind < 0.5:
        a = rng.uniform(lo_d, hi_d)
        b = rng.uniform(lo_d, hi_d)
    else:  # narrow boxes at assorted magnitudes
        a = rng.uniform(lo_d, hi_d) * 10.0 ** -rng.randrange(0, 8)
        b = a + abs(a) * 10.0 ** -rng.uniform(0, 15)
    a, b = min(a, b), max(a, b)
    a, b = max(a, lo_d), min(b, hi_d)
    if name in ("log", "log2", "log10") and a <= 0:
        a = math.nextafter(0.0, 1.0)
    return a, min(max(a, b), hi_d)


@pytest.mark.criterion("C4", "elementary functions within 2 ulps; sin(1e10) within 4 ulps")
@pytest.mark.parametrize("name", sorted(_MP))
def test_c4_tightness(criterion, name):
    rng = random.Random(sorted(_MP).index(name))
    fn = getattr(elem, name)
    worst = 0.0
    bad = []
    with mpmath.workprec(200):
        for _ in range(N_TIGHT):
            a, b = _random_box(rng, name)
            r = fn(Interval(a, b))
            rng_true = _true_range(name, a, b)
            if rng_true is None:
                if not (r.lo == -math.inf and r.hi == math.inf) and len(bad) < 5:
                    bad.append((a, b, str(r), "expected entire"))
                continue
            t_lo, t_hi = rng_true
            # beyond the largest double the tightest finite bound is that double
            top = mpmath.mpf(1.7976931348623157e308)
            t_lo, t_hi = min(t_lo, top), max(t_hi, -top)
            # containment plus the distance of each endpoint from the exact bound
            e_lo = (t_lo - mpmath.mpf(r.lo)) if math.isfinite(r.lo) else None
            e_hi = (mpmath.mpf(r.hi) - t_hi) if math.isfinite(r.hi) else None
            for e, t in ((e_lo, t_lo), (e_hi, t_hi)):
                if e is None:
                    # only an overflowing bound may be infinite
                    if abs(t) < top:
                        bad.append((a, b, str(r), "infinite bound"))
                    continue
                u = _ulps(e, float(t))
                worst = max(worst, u)
                if (e < 0 or u > 2) and len(bad) < 5:
                    bad.append((a, b, str(r), float(e), u))
    criterion.check(not bad, f"{name}: {N_TIGHT} boxes, worst endpoint error {worst:.3f} ulp "
                             f"{bad}")
    assert not bad


@pytest.mark.criterion("C4", "elementary functions within 2 ulps; sin(1e10) within 4 ulps")
def test_c4_sin_huge_argument(criterion):
    r = elem.sin(Interval(1e10, 1e10))
    with mpmath.workprec(300):
        true = mpmath.sin(mpmath.mpf(1e10))
        contained = mpmath.mpf(r.lo) <= true <= mpmath.mpf(r.hi)
    width_ulps = float(Fraction(r.hi) - Fraction(r.lo)) / float(oracles.ulp(r.hi))
    criterion.check(contained and width_ulps <= 4,
                    f"sin(1e10) = {format_interval(r, Format(17, 'scientific'))}, "
                    f"width {width_ulps:.0f} ulp")
    assert contained and width_ulps <= 4


# -- C5 / C9 parser taxonomy and hex round trip -------------------------------------------

def _taxonomy(criterion, fmt):
    cases = [("[1,2]", Accuracy.EXACT, (1, 2)), ("[1/3,2/3]", Accuracy.TIGHT, None),
             ("disaster", Accuracy.INVALID, None), ("Am I an interval?", Accuracy.INVALID, None),
             ("[-inf,4]", Accuracy.EXACT, (-math.inf, 4)), ("5?", Accuracy.EXACT, (4.5, 5.5))]
    ok = True
    for text, acc, bounds in cases:
        x, got = try_parse(text, fmt)
        good = got == acc
        if bounds is not None:
            good = good and float(x.lo) == bounds[0] and float(x.hi) == bounds[1]
        if text == "[1/3,2/3]":
            third = Fraction(1, 3)
            good = good and Fraction(x.lo) < third < Fraction(fmt.next_up(x.lo)) \
                if fmt is BINARY64 else good and x.lo < third
        ok &= criterion.check(good, f"[{fmt.name}] {text!r} -> {got.name} {x}")
    return ok


def _random_interval(rng, fmt):
    kind = rng.random()
    if kind < 0.03:
        return Interval(None, None, fmt)
    if kind < 0.06:
        return Interval(-math.inf, math.inf, fmt)

    def value():
        r = rng.random()
        if r < 0.05:
            return 0.0
        if r < 0.1:
            return rng.choice([-math.inf, math.inf])
        if fmt is BINARY64:
            return np.frombuffer(rng.getrandbits(64).to_bytes(8, "little"), dtype=np.float64)[0]
        man = rng.getrandbits(fmt.precision) | (1 << (fmt.precision - 1))
        return fmt.from_dyadic(man * rng.choice([-1, 1]), rng.randint(-2000, 2000), DOWN)

    a, b = value(), value()
    a = float(a) if fmt is BINARY64 else a
    b = float(b) if fmt is BINARY64 else b
    if a != a or b != b:
        return _random_interval(rng, fmt)
    if b < a:
        a, b = b, a
    if a == b and a in (math.inf, -math.inf):
        return _random_interval(rng, fmt)
    return Interval(a, b, fmt)


def _hex_round_trip(criterion, fmt, n=10 ** 4):
    rng = random.Random(1788)
    bad = []
    for _ in range(n):
        x = _random_interval(rng, fmt)
        text = format_interval(x, HEX_FORMAT)
        y, acc = try_parse(text, fmt)
        if not (acc == Accuracy.EXACT and y.lo == x.lo and y.hi == x.hi) and len(bad) < 5:
            bad.append((text, acc, str(y)))
    criterion.check(not bad, f"[{fmt.name}] hex round trip of {n} random intervals, "
                             f"failures {bad}")
    return not bad


@pytest.mark.criterion("C5", "parser accuracy taxonomy and exact hex round trip")
def test_c5_parser(criterion):
    assert _taxonomy(criterion, BINARY64)
    assert _hex_round_trip(criterion, BINARY64)


# -- C6 ------------------------------------------------------------------------------------

@pytest.mark.criterion("C6", "overlap agrees with a brute-force classifier")
def test_c6_overlap_exhaustive(criterion):
    values = [-math.inf, -1.0, 0.0, 1.0, 2.0, math.inf]
    boxes = [None] + [(p, q) for p in values for q in values
                      if p <= q and p != math.inf and q != -math.inf]
    mismatches, seen = [], set()
    for a in boxes:
        for b in boxes:
            x = Interval() if a is None else Interval(*a)
            y = Interval() if b is None else Interval(*b)
            want = oracles.brute_overlap(a, b)
            got = overlap(x, y)
            seen.add(want)
            if got != want:
                mismatches.append((a, b, got, want))
    n = len(boxes) ** 2
    criterion.check(not mismatches and len(seen) == 16,
                    f"{n} pairs, {len(seen)} states reached, mismatches {mismatches[:5]}")
    assert not mismatches and len(seen) == 16


# -- C7 ------------------------------------------------------------------------------------

@pytest.mark.criterion("C7", "interval Newton encloses known roots without false uniqueness")
def test_c7_sqrt2(criterion):
    p = IntervalPolynomial([-2.0, 0.0, 1.0])
    roots = newton_solve(p, Interval(0.0, 2.0))
    r = roots[0] if roots else None
    s = math.sqrt(2.0)
    ok = (len(roots) == 1 and r.unique and r.box.lo <= s <= r.box.hi
          and r.box.hi - r.box.lo <= 1e-12)
    criterion.check(ok, f"x^2-2 on [0,2]: {[(str(q.box), q.unique) for q in roots]}")
    assert ok


def _expand(roots, lead):
    """Interval coefficients (constant first) of lead * prod(x - r)."""
    coeffs = [Interval(lead)]
    for r in roots:
        rr = Interval(r)
        shifted = [Interval(0.0)] + coeffs                      # x * poly
        scaled = [arith.mul(c, rr) for c in coeffs] + [Interval(0.0)]
        coeffs = [arith.sub(s, t) for s, t in zip(shifted, scaled)]
    return coeffs


@pytest.mark.criterion("C7", "interval Newton encloses known roots without false uniqueness")
def test_c7_random_factored(criterion):
    rng = random.Random(2024)
    problems = []
    for case in range(100):
        degree = rng.randint(1, 8)
        roots = []
        while len(roots) < degree:
            if roots and rng.random() < 0.1:
                roots.append(rng.choice(roots))          # a repeated root
            elif rng.random() < 0.5:
                roots.append(rng.randint(-64, 64) / 8)    # dyadic: exact coefficients
            else:
                roots.append(rng.uniform(-8, 8))          # coefficients become intervals
        lead = rng.choice([1.0, -1.0, 0.5, 3.0])
        p = IntervalPolynomial(_expand(roots, lead))
        # near a multiple root the enclosure of p contains 0 over a whole region, which
        # must be covered by tol-wide boxes; a coarser tol keeps that count bounded
        tol = 1e-10 if len(set(roots)) == len(roots) else 1e-6
        found = newton_solve(p, Interval(-10.0, 10.0), tol=tol)
        distinct = sorted(set(roots))
        for root in distinct:
            if not any(e.box.lo <= root <= e.box.hi for e in found):
                problems.append((case, "root not enclosed", root))
        for e in found:
            inside = [r for r in distinct if e.box.lo <= r <= e.box.hi]
            if e.unique and (len(inside) != 1 or roots.count(inside[0]) != 1):
                problems.append((case, "false uniqueness", str(e.box), inside))
    criterion.check(not problems, f"100 factored polynomials, problems {problems[:5]}")
    assert not problems


# -- C8 ------------------------------------------------------------------------------------

@pytest.mark.criterion("C8", "bench-lebesgue at 257 nodes x 10^6 points is seed-deterministic")
def test_c8_bench_lebesgue(criterion):
    argv = ["bench-lebesgue", "--nodes", "257", "--points", "1000000", "--seed", "5", "--json"]
    reports = []
    for _ in range(2):
        code, text = _run(argv)
        assert code == 0
        reports.append(json.loads(text))
    a, b = reports
    same = (a["checksum_lo_hex"], a["checksum_hi_hex"]) == (b["checksum_lo_hex"],
                                                             b["checksum_hi_hex"])
    criterion.check(same and a["ops"] == 257 * 10 ** 6,
                    f"checksum {a['checksum_lo_hex']} .. {a['checksum_hi_hex']} on both runs, "
                    f"{sum(a['seconds'].values()):.1f} s")
    assert same

    # self-consistency: the vectorized sweep agrees with the scalar evaluator on a
    # subset, the Lebesgue function is at least 1, and mpmath values are enclosed
    r = run_bench_lebesgue(257, 300, 5)
    from intervalkit.cli import lebesgue_points
    nodes, ts = lebesgue_points(257, 300, 5)
    weights = barycentric_weights(257)
    hull_lo, hull_hi = math.inf, -math.inf
    with mpmath.workprec(160):
        xs = [mpmath.mpf(x) for x in nodes]   # the binary64 nodes actually used
        for t in ts[:40]:
            y = lebesgue_eval(LebesgueProblem(nodes, weights, Interval(float(t))))
            hull_lo, hull_hi = min(hull_lo, y.lo), max(hull_hi, y.hi)
            T = mpmath.mpf(float(t))
            terms = [(-1) ** k * (mpmath.mpf(0.5) if k in (0, 256) else 1) / (T - x)
                     for k, x in enumerate(xs)]
            exact = sum(abs(q) for q in terms) / abs(sum(terms))
            assert y.lo <= exact <= y.hi and y.lo >= 1 - 1e-12
    assert r["checksum"].lo >= 1.0
    criterion.check(True, "scalar and vectorized paths agree; enclosures contain mpmath values")


# -- C9 ------------------------------------------------------------------------------------

@pytest.mark.criterion("C9", "bigfloat:256 containment fuzz, parser and promotion")
@pytest.mark.parametrize("name", [op.name for op in fuzz.ALL_OPS])
def test_c9_containment_bigfloat(criterion, name):
    _fuzz(criterion, name, B256)


@pytest.mark.criterion("C9", "bigfloat:256 containment fuzz, parser and promotion")
def test_c9_parser_bigfloat(criterion):
    assert _taxonomy(criterion, B256)
    assert _hex_round_trip(criterion, B256)


@pytest.mark.criterion("C9", "bigfloat:256 containment fuzz, parser and promotion")
def test_c9_promotion(criterion):
    """Binary64 results promoted to bigfloat:256 still enclose the exact image."""
    rng = np.random.default_rng(256)
    names = [op.name for op in fuzz.ALL_OPS if op.arity <= 2 and not op.pair]
    bad, checks = [], 0
    precs = fuzz.oracle_precisions(B256)
    for case in range(10 ** 4):
        op = fuzz.OPS_BY_NAME[names[case % len(names)]]
        ranges = op.ranges if len(op.ranges) == op.arity else op.ranges * op.arity
        signs = (1, 0) if op.name == "pow" else (op.signs[0],) * op.arity
        args = []
        for j in range(op.arity):
            lo, hi, em = fuzz.gen_operands(rng, 1, *ranges[j], sign=signs[j], specials=False)
            args.append(Interval(float(lo[0]), float(hi[0])))
        param = int(rng.choice(op.int_param)) if op.int_param else None
        r64 = op.interval_fn(*args, param) if param is not None else op.interval_fn(*args)
        up = promote(r64, B256)
        same = (up.lo is None) == (r64.lo is None) and (
            up.lo is None or all(infsign(u) == infsign(v) and
                                 (infsign(v) or to_fraction(u) == to_fraction(v))
                                 for u, v in ((up.lo, r64.lo), (up.hi, r64.hi))))
        big_args = [promote(a, B256) for a in args]
        r256 = op.interval_fn(*big_args, param) if param is not None \
            else op.interval_fn(*big_args)
        # the bigfloat result must lie inside the promoted binary64 one (both enclose
        # the same exact image; the finer grid is at least as tight)
        nested = r256.lo is None or (up.lo is not None and up.lo <= r256.lo and
                                     r256.hi <= up.hi)
        corner_ok = True
        for corner in fuzz._corners(op.arity):
            pts = [a.hi if c else a.lo for a, c in zip(big_args, corner)]
            checks += 1
            if fuzz._inside_exact(op, pts, (up,), param, precs) is False:
                corner_ok = False
        if not (same and nested and corner_ok) and len(bad) < 5:
            bad.append((op.name, [str(a) for a in args], str(r64), same, nested, corner_ok))
    criterion.check(not bad, f"10^4 promoted results, {checks} exact corner checks, "
                             f"failures {bad}")
    assert not bad
