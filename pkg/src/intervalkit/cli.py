"""Command-line harness: expression evaluation, root finding, benchmarks, reformatting.

Exit codes: 0 success, 2 usage or input error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .endpoint import BINARY64, as_dyadic, infsign, parse_format, _hex_dyadic
from .errors import IntervalError, ResourceLimit
from .expr import Expression, ExpressionError
from .interval import Interval, hull, is_empty, point
from .textio import Format, format_interval, parse, read_sequence, write_sequence

EXIT_OK, EXIT_USAGE, EXIT_LIMIT = 0, 2, 3

_NOTATION_NAMES = {"fixed": "fixed", "sci": "scientific", "scientific": "scientific",
                   "hex": "hex", "auto": "auto"}

# bench-elem argument ranges (endpoints are clipped to each function's domain)
ELEM_RANGES = {
    "sin": (-1e3, 1e3), "cos": (-1e3, 1e3), "tan": (-1e3, 1e3), "atan": (-1e3, 1e3),
    "asin": (-1.0, 1.0), "acos": (-1.0, 1.0), "exp": (-700.0, 700.0), "log": (0.0, 1e3),
}
_LEBESGUE_CHUNK = 1 << 16


class UsageError(Exception):
    pass


def _hex(v):
    s = infsign(v)
    if s:
        return "inf" if s > 0 else "-inf"
    return _hex_dyadic(*as_dyadic(v))


# -- shared option handling -----------------------------------------------------------


def _common(p, seed=False):
    g = p.add_argument_group("output and endpoint options")
    g.add_argument("--precision", type=int, default=6, help="digits to print (default 6)")
    g.add_argument("--notation", choices=sorted(_NOTATION_NAMES), default="auto")
    g.add_argument("--pad", action="store_true", help="keep trailing zeros")
    g.add_argument("--border-slack", type=int, default=0, metavar="N")
    g.add_argument("--center-slack", type=int, default=0, metavar="N")
    g.add_argument("--endpoint", default="binary64", metavar="FMT",
                   help="binary64, binary32 or bigfloat:<bits>")
    g.add_argument("--json", action="store_true", help="machine-readable output")
    if seed:
        g.add_argument("--seed", type=int, default=0, help="random seed (default 0)")


def _format(args):
    try:
        return Format(args.precision, _NOTATION_NAMES[args.notation], args.pad,
                      args.border_slack, args.center_slack)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _endpoint(args):
    try:
        return parse_format(args.endpoint)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _bindings(items, fmt):
    env = {}
    for item in items:
        name, sep, literal = item.partition("=")
        if not sep or not name.isidentifier():
            raise UsageError(f"binding must look like name=[lo,hi]: {item!r}")
        env[name] = parse(literal, fmt)
    return env


def _report(name, params, seconds, ops, checksum, args, out):
    if args.json:
        lo_hex = hi_hex = None
        if not is_empty(checksum):
            lo_hex, hi_hex = _hex(checksum.lo), _hex(checksum.hi)
        json.dump({"name": name, "params": params, "seconds": seconds, "ops": ops,
                   "checksum_lo_hex": lo_hex, "checksum_hi_hex": hi_hex}, out)
        out.write("\n")
        return
    out.write(f"{name}: {ops} operations\n")
    for key, value in params.items():
        out.write(f"  {key} = {value}\n")
    for phase, secs in seconds.items():
        out.write(f"  {phase}: {secs:.3f} s\n")
    out.write(f"  checksum = {format_interval(checksum, Format(notation='hex'))}\n")


# -- subcommands ---------------------------------------------------------------------------


def cmd_eval(args, out):
    fmt = _endpoint(args)
    expr = Expression(args.expr)
    value = expr.evaluate(_bindings(args.bindings, fmt), fmt)
    out.write(format_interval(value, _format(args)) + "\n")


def cmd_iterate(args, out):
    fmt = _endpoint(args)
    env = _bindings(args.bindings, fmt)
    if args.var not in env:
        raise UsageError(f"iteration variable {args.var!r} is not bound")
    expr = Expression(args.expr)
    f = _format(args)
    for _ in range(args.iterations):
        env[args.var] = expr.evaluate(env, fmt)
        out.write(format_interval(env[args.var], f) + "\n")


def lebesgue_points(n, count, seed, fmt=BINARY64):
    """Seeded point boxes in [-1, 1] that avoid the Chebyshev nodes."""
    import numpy as np

    from .newton import chebyshev_nodes
    nodes = chebyshev_nodes(n, fmt)
    rng = np.random.default_rng(seed)
    ts = rng.uniform(-1.0, 1.0, count)
    node_set = np.array([float(x) for x in nodes])
    clash = np.isin(ts, node_set)
    while clash.any():
        ts[clash] = rng.uniform(-1.0, 1.0, int(clash.sum()))
        clash = np.isin(ts, node_set)
    return nodes, ts


def run_bench_lebesgue(n, points, seed, fmt=BINARY64):
    """Evaluate the Lebesgue function at ``points`` seeded boxes; returns a report dict."""
    from . import _vec
    from .newton import barycentric_weights, lebesgue_eval, LebesgueProblem

    t0 = time.perf_counter()
    nodes, ts = lebesgue_points(n, points, seed, fmt)
    weights = barycentric_weights(n, fmt)
    t1 = time.perf_counter()
    checksum = Interval._new(None, None, fmt)
    if fmt is BINARY64:
        lo_all, hi_all = [], []
        wv = [w.lo for w in weights]
        for start in range(0, points, _LEBESGUE_CHUNK):
            lo, hi = _vec.lebesgue_points(nodes, wv, ts[start:start + _LEBESGUE_CHUNK])
            ok = lo == lo  # drop NaN (empty) results
            if ok.any():
                lo_all.append(float(lo[ok].min()))
                hi_all.append(float(hi[ok].max()))
        if lo_all:
            checksum = Interval._new(min(lo_all), max(hi_all), fmt)
    else:
        for t in ts:
            checksum = hull(checksum, lebesgue_eval(LebesgueProblem(nodes, weights,
                                                                    point(float(t), fmt))))
    t2 = time.perf_counter()
    return {
        "name": "bench-lebesgue",
        "params": {"nodes": n, "points": points, "seed": seed, "endpoint": fmt.name,
                   "vectorized": fmt is BINARY64},
        "seconds": {"setup": t1 - t0, "evaluate": t2 - t1},
        "ops": points * n,
        "checksum": checksum,
    }


def cmd_bench_lebesgue(args, out):
    if args.nodes < 2:
        raise UsageError("--nodes must be at least 2")
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    r = run_bench_lebesgue(args.nodes, args.points, args.seed, _endpoint(args))
    _report(r["name"], r["params"], r["seconds"], r["ops"], r["checksum"], args, out)


def elem_boxes(name, count, seed):
    """Seeded random intervals for one function: a uniform lower endpoint in the
    function's range and a log-uniform width in [1e-6, 1] times the range span."""
    import numpy as np

    lo_r, hi_r = ELEM_RANGES[name]
    rng = np.random.default_rng([seed, sorted(ELEM_RANGES).index(name)])
    span = hi_r - lo_r
    lo = rng.uniform(lo_r, hi_r, count)
    width = span * 10.0 ** rng.uniform(-6.0, 0.0, count)
    hi = np.minimum(lo + width, hi_r)
    return lo, hi


def run_bench_elem(functions, evals, seed, fmt=BINARY64):
    from . import elem
    seconds, checksum = {}, Interval._new(None, None, fmt)
    for name in functions:
        lo, hi = elem_boxes(name, evals, seed)
        boxes = [Interval(float(a), float(b), fmt) for a, b in zip(lo, hi)]
        fn = getattr(elem, name)
        t0 = time.perf_counter()
        results = [fn(x) for x in boxes]
        seconds[name] = time.perf_counter() - t0
        checksum = hull(checksum, *results)
    return {
        "name": "bench-elem",
        "params": {"functions": list(functions), "evals": evals, "seed": seed,
                   "endpoint": fmt.name},
        "seconds": seconds,
        "ops": evals * len(functions),
        "checksum": checksum,
    }


def cmd_bench_elem(args, out):
    names = [s for s in args.functions.split(",") if s]
    unknown = [s for s in names if s not in ELEM_RANGES]
    if unknown or not names:
        raise UsageError(f"functions must be drawn from {','.join(sorted(ELEM_RANGES))}")
    if args.evals < 1:
        raise UsageError("--evals must be at least 1")
    r = run_bench_elem(names, args.evals, args.seed, _endpoint(args))
    _report(r["name"], r["params"], r["seconds"], r["ops"], r["checksum"], args, out)


def random_polynomial(degree, seed, fmt=BINARY64):
    """Point coefficients drawn uniformly from [-1, 1] (constant term first)."""
    import numpy as np

    from .newton import IntervalPolynomial
    rng = np.random.default_rng(seed)
    return IntervalPolynomial([float(c) for c in rng.uniform(-1.0, 1.0, degree + 1)], fmt)


def _coefficients(text, fmt):
    from .newton import IntervalPolynomial
    out = []
    for tok in text.replace(",", " ").split() if "[" not in text else _split_literals(text):
        out.append(parse(tok if tok.startswith("[") else f"[{tok}]", fmt))
    if not out:
        raise UsageError("no coefficients given")
    return IntervalPolynomial(out, fmt)


def _split_literals(text):
    toks, buf, depth = [], "", 0
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch.isspace() and depth == 0:
            if buf:
                toks.append(buf)
            buf = ""
        else:
            buf += ch
    if buf:
        toks.append(buf)
    return toks


def cmd_solve(args, out):
    from .newton import newton_solve
    fmt = _endpoint(args)
    if args.random_degree is not None:
        if args.random_degree < 1:
            raise UsageError("--random-degree must be at least 1")
        poly = random_polynomial(args.random_degree, args.seed, fmt)
    elif args.file:
        with open(args.file, encoding="utf-8") as fh:
            poly = _coefficients(fh.read(), fmt)
    elif args.coefficients:
        poly = _coefficients(args.coefficients, fmt)
    else:
        raise UsageError("give coefficients, --file or --random-degree")
    domain = parse(args.domain, fmt)
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    t0 = time.perf_counter()
    roots = newton_solve(poly, domain, args.tol, args.max_boxes)
    elapsed = time.perf_counter() - t0
    f = _format(args)
    if args.json:
        json.dump({"seconds": elapsed, "roots": [
            {"lo_hex": _hex(r.box.lo), "hi_hex": _hex(r.box.hi), "unique": r.unique,
             "text": format_interval(r.box, f)} for r in roots]}, out)
        out.write("\n")
        return
    for r in roots:
        out.write(f"{format_interval(r.box, f)} {'unique' if r.unique else 'unverified'}\n")


def cmd_fmt(args, out):
    fmt = _endpoint(args)
    src = sys.stdin if args.input == "-" else open(args.input, encoding="utf-8")
    try:
        xs, _acc = read_sequence(src, fmt)
    finally:
        if src is not sys.stdin:
            src.close()
    if args.output == "-":
        n = write_sequence(xs, out, _format(args))
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            n = write_sequence(xs, fh, _format(args))
    print(f"{n} intervals", file=sys.stderr)


# -- entry point --------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="intervalkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="evaluate an interval expression")
    s.add_argument("expr")
    s.add_argument("bindings", nargs="*", metavar="NAME=INTERVAL")
    _common(s)
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("iterate", help="repeatedly assign an expression to a variable")
    s.add_argument("expr")
    s.add_argument("bindings", nargs="*", metavar="NAME=INTERVAL")
    s.add_argument("--var", required=True, help="variable receiving each result")
    s.add_argument("--iterations", type=int, default=10)
    _common(s)
    s.set_defaults(run=cmd_iterate)

    s = sub.add_parser("bench-lebesgue", help="time Lebesgue-function evaluation")
    s.add_argument("--nodes", type=int, default=257)
    s.add_argument("--points", type=int, default=10 ** 6)
    _common(s, seed=True)
    s.set_defaults(run=cmd_bench_lebesgue)

    s = sub.add_parser("bench-elem", help="time elementary functions on random intervals")
    s.add_argument("--functions", default=",".join(sorted(ELEM_RANGES)))
    s.add_argument("--evals", type=int, default=10 ** 6)
    _common(s, seed=True)
    s.set_defaults(run=cmd_bench_elem)

    s = sub.add_parser("solve", help="enclose the real roots of a polynomial")
    s.add_argument("coefficients", nargs="?",
                   help="coefficients, constant term first, e.g. '-2 0 1'")
    s.add_argument("--file", help="read coefficients from a file")
    s.add_argument("--random-degree", type=int, help="solve a seeded random polynomial")
    s.add_argument("--domain", default="[-10,10]")
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--max-boxes", type=int, default=10 ** 6)
    _common(s, seed=True)
    s.set_defaults(run=cmd_solve)

    s = sub.add_parser("fmt", help="rewrite an interval file in another format")
    s.add_argument("input", help="input file or - for stdin")
    s.add_argument("output", help="output file or - for stdout")
    _common(s)
    s.set_defaults(run=cmd_fmt)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.run(args, out)
    except ResourceLimit as exc:
        print(f"intervalkit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ExpressionError, IntervalError, ValueError, OSError) as exc:
        print(f"intervalkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
