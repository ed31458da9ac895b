"""Command-line interface: ``pqscp <command> ...`` (also ``python -m pqscp``)."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import checks
from .contfrac import below_terms_upto, table_for
from .core import Params, h, heaviest_chain, part_value, validate_params
from .ell import ell_prefix, jump_indices, m_ell
from .errors import BudgetExceeded, PQError
from .fastalg import g_fast, iteration_bound, kn_representation, run_fast, y_fast, z_fast
from .frontier import y_set, z_max, z_set
from .oracle import g_recursive

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_BUDGET = 0, 1, 2, 3

_SCI = re.compile(r"^(\d+)(?:e|E)(\d+)$")
_POW = re.compile(r"^(\d+)(?:\^|\*\*)(\d+)$")


def parse_int(text: str) -> int:
    """Decimal integer, or ``AeB`` / ``A^B`` / ``A**B`` shorthand, kept exact."""
    text = text.strip().replace("_", "")
    if text.isdigit():
        return int(text)
    if mt := _SCI.match(text):
        return int(mt[1]) * 10 ** int(mt[2])
    if mt := _POW.match(text):
        return int(mt[1]) ** int(mt[2])
    raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")


# frontier tables ------------------------------------------------------------


def frontier_rows(params: Params, m: int) -> tuple[list[dict], int]:
    """Rows of Z_m ordered by b descending, and the index of y_m among them."""
    fs = z_set(params, m)
    rows = [
        {"a": pt.a, "b": pt.b, "value": val, "h": hv}
        for pt, val, hv in zip(fs.points, fs.values, fs.hvals)
    ][::-1]
    y = y_set(params, m)[0]
    idx = next(i for i, r in enumerate(rows) if (r["a"], r["b"]) == tuple(y))
    return rows, idx


def frontier_json(params: Params, m: int) -> str:
    rows, idx = frontier_rows(params, m)
    doc = {
        "m": str(m),
        "p": params.p,
        "q": params.q,
        "rows": [{"a": r["a"], "b": r["b"], "value": str(r["value"]), "h": str(r["h"])} for r in rows],
        "max_index": idx,
    }
    return json.dumps(doc)


def parse_frontier_json(text: str) -> dict:
    doc = json.loads(text)
    doc["m"] = int(doc["m"])
    doc["rows"] = [{"a": r["a"], "b": r["b"], "value": int(r["value"]), "h": int(r["h"])} for r in doc["rows"]]
    return doc


def frontier_csv(params: Params, m: int) -> str:
    rows, idx = frontier_rows(params, m)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "value", "h", "max"])
    for i, r in enumerate(rows):
        w.writerow([r["a"], r["b"], r["value"], r["h"], int(i == idx)])
    return buf.getvalue()


def parse_frontier_csv(text: str) -> tuple[list[dict], int]:
    rows, idx = [], -1
    for i, rec in enumerate(csv.DictReader(io.StringIO(text))):
        rows.append({k: int(rec[k]) for k in ("a", "b", "value", "h")})
        if rec["max"] == "1":
            idx = i
    return rows, idx


def frontier_text(params: Params, m: int) -> str:
    rows, idx = frontier_rows(params, m)
    best = rows[idx]["h"]
    lines = [f"Z_{m} for (p,q) = ({params.p},{params.q})", f"{'(a,b)':>12} {'p^a q^b':>24} {'h(a,b)':>24}"]
    for r in rows:
        mark = " *" if r["h"] == best else ""
        lines.append(f"{'(%d,%d)' % (r['a'], r['b']):>12} {r['value']:>24} {r['h']:>24}{mark}")
    lines.append(f"G({m}) = {best}")
    return "\n".join(lines)


# svg ------------------------------------------------------------------------


def lattice_svg(params: Params, m: int, cell: int = 40) -> str:
    """Z_m as dots under the line a log p + b log q = log m, with the ell staircase dashed."""
    fs = z_set(params, m)
    amax = max(pt.a for pt in fs) + 1
    bmax = max(pt.b for pt in fs) + 1
    pad = 30
    width, height = pad * 2 + amax * cell, pad * 2 + bmax * cell

    def xy(a, b):
        return pad + a * cell, height - pad - b * cell

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for a in range(amax + 1):
        x0, y0 = xy(a, 0)
        x1, y1 = xy(a, bmax)
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#ddd" stroke-dasharray="1,3"/>')
    for b in range(bmax + 1):
        x0, y0 = xy(0, b)
        x1, y1 = xy(amax, b)
        out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#ddd" stroke-dasharray="1,3"/>')
    ox, oy = xy(0, 0)
    out.append(f'<line x1="{ox}" y1="{oy}" x2="{xy(amax, 0)[0]}" y2="{oy}" stroke="black"/>')
    out.append(f'<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{xy(0, bmax)[1]}" stroke="black"/>')
    out.append(f'<text x="{xy(amax, 0)[0]}" y="{oy + 18}" font-size="14">a</text>')
    out.append(f'<text x="{ox - 18}" y="{xy(0, bmax)[1]}" font-size="14">b</text>')

    # a log p + b log q = log m  crosses the axes at log_p m and log_q m
    lp = math.log(m) / math.log(params.p)
    lq = math.log(m) / math.log(params.q)
    x0, y0 = xy(0, lq)
    x1, y1 = xy(lp, 0)
    out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="black"/>')

    ells = ell_prefix(params, bmax - 1)
    pts = []
    for b, e in enumerate(ells):
        pts.append(xy(e, b))
    path = " ".join(f"{x},{y}" for x, y in pts)
    out.append(f'<polyline points="{path}" fill="none" stroke="blue" stroke-dasharray="6,4"/>')
    for x, y in pts:
        out.append(f'<path d="M{x - 4},{y - 4} L{x + 4},{y + 4} M{x - 4},{y + 4} L{x + 4},{y - 4}" stroke="blue"/>')
    for pt in fs:
        x, y = xy(pt.a, pt.b)
        out.append(f'<circle cx="{x}" cy="{y}" r="5" fill="red" data-a="{pt.a}" data-b="{pt.b}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# commands -------------------------------------------------------------------


def _g_value(params: Params, m: int, mode: str) -> tuple[int, object]:
    if mode == "exact-oracle":
        y = y_set(params, m)[0]
        g = g_recursive(params, m)
        return g, y
    y = y_fast(params, m, mode)
    return h(params, *y), y


def _print_trace(params: Params, m: int, B: int, mode: str) -> None:
    res = run_fast(params, m, B, "exact" if mode == "exact-oracle" else mode)
    print(f"{'i':>4} {'b_i':>10} {'d_i':>10}")
    for i, b in enumerate(res.b_sequence):
        d = b - res.b_sequence[i - 1] if i else 0
        print(f"{i:>4} {b:>10} {d if i else '':>10}")
    print(f"iterations: {res.iterations} (bound {iteration_bound(params, m)})")
    print(f"engine: {res.mode}, precision: {res.precision}, escalations: {res.escalations}")


def cmd_g(args, params: Params) -> int:
    g, y = _g_value(params, args.m, args.mode)
    print(g)
    if args.witness:
        chain = heaviest_chain(params, *y)
        print("parts:", " ".join(str(v) for v in chain.values))
        print("exponents:", " ".join(f"({a},{b})" for a, b in chain.parts))
        print("weight:", chain.weight)
    if args.trace:
        _print_trace(params, args.m, m_ell(params, args.m), args.mode)
    return EXIT_OK


def cmd_ym(args, params: Params) -> int:
    y = y_set(params, args.m)[0] if args.mode == "exact-oracle" else y_fast(params, args.m, args.mode)
    print(f"{part_value(params, y)} = {params.p}^{y.a} * {params.q}^{y.b}")
    if args.trace:
        _print_trace(params, args.m, m_ell(params, args.m), args.mode)
    return EXIT_OK


def cmd_zm(args, params: Params) -> int:
    z = z_max(params, args.m) if args.mode == "exact-oracle" else z_fast(params, args.m, args.mode)
    print(f"{part_value(params, z)} = {params.p}^{z.a} * {params.q}^{z.b}")
    if args.trace:
        _print_trace(params, args.m, None, args.mode)
    return EXIT_OK


def cmd_frontier(args, params: Params) -> int:
    fmt = {"text": frontier_text, "csv": frontier_csv, "json": frontier_json}[args.format]
    sys.stdout.write(fmt(params, args.m).rstrip("\n") + "\n")
    return EXIT_OK


def cmd_convergents(args, params: Params) -> int:
    table = table_for(params, 1)
    table = table.deepen(args.depth)
    rows = list(zip(range(args.depth), table.partial_quotients, table.h, table.k))
    if args.format == "json":
        print(json.dumps([{"i": i, "a": a, "h": hh, "k": kk} for i, a, hh, kk in rows]))
        return EXIT_OK
    print(f"{'i':>3} {'a_i':>6} {'h_i':>14} {'k_i':>14}")
    for i, a, hh, kk in rows:
        print(f"{i:>3} {a:>6} {hh:>14} {kk:>14}")
    kmax = table.k[min(args.depth, table.depth) - 1]
    print("K_n:", " ".join(str(t.K) for t in below_terms_upto(params, kmax)))
    return EXIT_OK


def cmd_ell(args, params: Params) -> int:
    vals = ell_prefix(params, args.max)
    if args.format == "json":
        print(json.dumps(vals))
    else:
        for b, v in enumerate(vals):
            print(b, v)
    return EXIT_OK


def cmd_jumps(args, params: Params) -> int:
    jumps = jump_indices(params, args.count)
    if args.format == "json":
        print(json.dumps([{"b": j, "ell": e} for j, e in jumps]))
    else:
        for j, e in jumps:
            print(j, e)
    return EXIT_OK


def cmd_kn(args, params: Params) -> int:
    rep = kn_representation(params, args.N)
    print(f"{args.N} = " + " + ".join(f"{c}*{t}" for t, c in rep))
    return EXIT_OK


def cmd_plot(args, params: Params) -> int:
    svg = lattice_svg(params, args.m)
    with open(args.output, "w") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return EXIT_OK


def _dense_chunk(job):
    p, q, lo, hi, mode = job
    params = Params(p, q)
    return [v for m in range(lo, hi) for v in checks.dense_violations(params, m, mode)]


def _sample_chunk(job):
    p, q, ms, mode = job
    params = Params(p, q)
    return [v for m in ms for v in checks.sample_violations(params, m, mode)]


def cmd_verify(args, params: Params) -> int:
    mode = "fixedpoint" if args.mode == "exact-oracle" else args.mode
    jobs = []
    step = 500
    for lo in range(1, args.dense + 1, step):
        jobs.append((_dense_chunk, (params.p, params.q, lo, min(lo + step, args.dense + 1), mode)))
    rng = random.Random(args.seed)
    sample = sorted(rng.randint(1, args.max) for _ in range(args.sample))
    for i in range(0, len(sample), 100):
        jobs.append((_sample_chunk, (params.p, params.q, sample[i : i + 100], mode)))

    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            results = list(ex.map(_call, jobs))
    else:
        results = [fn(job) for fn, job in jobs]
    violations = [v for chunk in results for v in chunk]

    print(f"(p,q) = ({params.p},{params.q}); dense m <= {args.dense}; {args.sample} samples <= {args.max}")
    for v in violations:
        print("VIOLATION", v)
    print("PASS" if not violations else f"FAIL ({len(violations)} violations)")
    return EXIT_OK if not violations else EXIT_FAIL


def _call(item):
    fn, job = item
    return fn(job)


def cmd_bench(args, params: Params) -> int:
    print(f"{'m':>12} {'G(m) agree':>10} {'recursive s':>12} {'fast s':>10} {'iters':>6} {'bound':>6}")
    ok = True
    for k in args.sizes:
        m = 10**k
        t0 = time.perf_counter()
        g1 = g_recursive(params, m)
        t1 = time.perf_counter()
        g2 = g_fast(params, m)
        t2 = time.perf_counter()
        its = run_fast(params, m).iterations
        bound = iteration_bound(params, m)
        ok &= its <= bound and g1 == g2
        print(f"{'10^%d' % k:>12} {str(g1 == g2):>10} {t1 - t0:>12.6f} {t2 - t1:>10.6f} {its:>6} {bound:>6}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, default=2)
    common.add_argument("-q", type=int, default=3)
    common.add_argument("--mode", choices=["fixedpoint", "modK", "exact", "exact-oracle"], default="fixedpoint")
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--trace", action="store_true")

    ap = argparse.ArgumentParser(prog="pqscp", description="Heaviest strictly chained (p,q)-ary partitions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("g", cmd_g, "G(m), the maximal weight")
    sp.add_argument("m", type=parse_int)
    sp.add_argument("--witness", action="store_true")
    add("ym", cmd_ym, "y_m, least greatest part of a heaviest chain").add_argument("m", type=parse_int)
    add("zm", cmd_zm, "z_m, the largest p^a q^b <= m").add_argument("m", type=parse_int)
    add("frontier", cmd_frontier, "the maximal set Z_m with h values").add_argument("m", type=parse_int)
    add("convergents", cmd_convergents, "continued fraction of log q / log p").add_argument(
        "--depth", type=int, default=10
    )
    add("ell", cmd_ell, "the sequence ell_0..ell_max").add_argument("--max", type=int, default=20)
    add("jumps", cmd_jumps, "jump indices of ell").add_argument("--count", type=int, default=5)
    add("kn", cmd_kn, "N as a sum of K_n terms").add_argument("N", type=parse_int)
    sp = add("plot", cmd_plot, "SVG of Z_m and the ell staircase")
    sp.add_argument("m", type=parse_int)
    sp.add_argument("-o", "--output", default="lattice.svg")
    sp = add("verify", cmd_verify, "invariant sweeps against the oracles")
    sp.add_argument("--dense", type=parse_int, default=1000)
    sp.add_argument("--sample", type=int, default=0)
    sp.add_argument("--max", type=parse_int, default=10**9)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp = add("bench", cmd_bench, "recursive vs fast timings at m = 10^k")
    sp.add_argument("--sizes", type=int, nargs="+", default=[3, 6, 9])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        params = validate_params(args.p, args.q)
        return args.fn(args, params)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PQError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
