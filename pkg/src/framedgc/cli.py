"""Command-line entry point: ``framedgc verify | betti | cocompose | matrix``.

Exit codes: 0 when every identity holds, 1 on an identity failure, 2 on a
usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from .engine import CACHE_ENV, betti, differential_matrix, enumerate_basis
from .engine import framed_betti, framed_betti_from_ranks
from .graph import NotAdmissible, OrientedGraph, ParseError, is_admissible, parse, serialize

log = logging.getLogger("framedgc")



class UsageError(Exception):
    pass


def format_graph(g: OrientedGraph) -> str:
    """``1`` for the unit, ``alpha_ij`` products for graphs without internal
    vertices, the serialization otherwise."""
    if not g.edges and not g.n_internal:
        return "1"
    if g.n_internal == 0:
        return "*".join(f"alpha_{a + 1}{b + 1}" if g.n_external < 10
                        else f"alpha_{a + 1},{b + 1}" for a, b in g.edges)
    return serialize(g)


def format_coef(c) -> str:
    c = Fraction(c)
    return f"+{c}" if c > 0 else str(c)


def format_tensor(t) -> list[str]:
    lines = []
    for keys, c in t.items():
        parts = []
        for k in keys:
            if isinstance(k, OrientedGraph):
                parts.append(f"[{format_graph(k)}]")
            else:
                g, S = k
                slots = "".join(f"*dtheta_{s}" for s in S)
                parts.append(f"[{format_graph(g)}{slots}]")
        lines.append(f"{format_coef(c)} · " + " (x) ".join(parts))
    return lines


def _load_config(path):
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def _parser():
    p = argparse.ArgumentParser(prog="framedgc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="JSON file with default bounds")
    p.add_argument("--cache-dir", help=f"basis cache directory (env {CACHE_ENV})")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--scope", default=None, help="suite name or 'all'")
    v.add_argument("--n-max", type=int)
    v.add_argument("--i-max", type=int)
    v.add_argument("--e-max", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--samples", type=int)
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--list", action="store_true", help="list suite names")
    v.add_argument("--output", help="write the report here as well")

    b = sub.add_parser("betti", help="dimension tables")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--imax", "--i-max", dest="imax", type=int)
    b.add_argument("--k-range", help="degrees as 'lo:hi' (inclusive)")
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--direct", action="store_true",
                   help="also compute framed dims from semidirect-complex ranks")

    c = sub.add_parser("cocompose", help="expand a cocomposition")
    c.add_argument("graph", help="serialized graph, e.g. 'n=3 m=0 edges=[(E1,E3)]'")
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--framed", metavar="S", help="circle slots, e.g. '1,3' (semidirect side)")
    c.add_argument("--rule", choices=["corrected", "literal"], default="corrected")

    m = sub.add_parser("matrix", help="dump the matrix of d in coordinate format")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--i", type=int, required=True, help="internal vertices of the source")
    return p


def _positive(name, value):
    if value is None or value < 0 or (name != "i-max" and value < 1):
        raise UsageError(f"--{name} must be positive, got {value}")
    return value


def cmd_verify(args, cfg, out):
    from .verify import ALIASES, EXPECTED_FAILURES, SUITES, Bounds, run_suites

    if args.list:
        for name in list(SUITES) + list(ALIASES):
            print(name, file=out)
        return 0
    scope = args.scope or cfg.get("scope", "all")
    if scope == "all":
        names = [s for s in SUITES if s not in EXPECTED_FAILURES]
    elif scope in SUITES or scope in ALIASES:
        names = [scope]
    else:
        raise UsageError(f"unknown identity {scope!r}; try --list")
    defaults = Bounds()
    bounds = Bounds(**{
        f: (getattr(args, f) if getattr(args, f) is not None
            else cfg.get(f, getattr(defaults, f)))
        for f in ("n_max", "i_max", "e_max", "seed", "samples")})
    _positive("n-max", bounds.n_max)
    _positive("i-max", bounds.i_max)
    _positive("e-max", bounds.e_max)
    report = run_suites(names, bounds)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["identity", "passed", "cases", "seconds", "counterexample"])
        for r in report["results"]:
            cex = json.dumps(r["counterexample"], sort_keys=True) if r["counterexample"] else ""
            w.writerow([r["identity"], int(r["passed"]), r["cases"], r["seconds"], cex])
    else:
        print(text, file=out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if report["passed"] else 1


def betti_rows(n, ks, imax, direct=False):
    rows = []
    for k in ks:
        row = {"n": n, "k": k, "dim_unframed": betti(n, k, imax),
               "dim_framed": framed_betti_from_ranks(n, k, imax)}
        if direct:
            row["dim_framed_direct"] = framed_betti(n, k, imax)
        rows.append(row)
    return rows


def cmd_betti(args, cfg, out):
    n = _positive("n", args.n)
    imax = args.imax if args.imax is not None else cfg.get("i_max", 2)
    _positive("i-max", imax)
    if args.k_range:
        try:
            lo, hi = (int(x) for x in args.k_range.split(":"))
        except ValueError:
            raise UsageError(f"bad --k-range {args.k_range!r}, expected lo:hi") from None
        ks = range(lo, hi + 1)
    else:
        ks = range(0, 2 * n)
    rows = betti_rows(n, ks, imax, args.direct)
    if args.format == "json":
        print(json.dumps({"imax": imax, "rows": rows}, indent=2), file=out)
    else:
        fields = ["n", "k", "dim_unframed", "dim_framed"] + (
            ["dim_framed_direct"] if args.direct else [])
        w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


def cmd_cocompose(args, cfg, out):
    try:
        g = parse(args.graph)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if not is_admissible(g):
        raise UsageError(f"graph {serialize(g)} is not admissible")
    i, m, n = args.i, args.m, args.n
    if g.n_external != m + n - 1 or not 1 <= i <= m or n < 1:
        raise UsageError(f"need 1 <= i <= m and m + n - 1 = {g.n_external}")
    if args.framed is not None:
        from .semidirect import SemidirectElement, sd_cocompose

        try:
            S = tuple(sorted(int(s) for s in args.framed.split(",") if s.strip()))
        except ValueError:
            raise UsageError(f"bad slot list {args.framed!r}") from None
        if any(not 1 <= s <= g.n_external for s in S) or len(set(S)) != len(S):
            raise UsageError(f"slots {S} out of range")
        try:
            t = sd_cocompose(SemidirectElement.from_graph(g, S), i, m, n, args.rule)
        except IndexError as exc:
            print(f"undefined: {exc}", file=out)
            return 1
    else:
        from .cooperad import cocompose

        t = cocompose(g, i, m, n)
    lines = format_tensor(t) or ["0"]
    print("\n".join(lines), file=out)
    return 0


def cmd_matrix(args, cfg, out):
    src = enumerate_basis(args.n, args.k, args.i)
    tgt = enumerate_basis(args.n, args.k + 1, args.i - 1) if args.i > 0 else []
    out.write(differential_matrix(src, tgt).dumps())
    return 0


COMMANDS = {"verify": cmd_verify, "betti": cmd_betti, "cocompose": cmd_cocompose,
            "matrix": cmd_matrix}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    saved = os.environ.get(CACHE_ENV)
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
    try:
        cfg = _load_config(args.config)
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, NotAdmissible, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved is None:
            os.environ.pop(CACHE_ENV, None)
        else:
            os.environ[CACHE_ENV] = saved


if __name__ == "__main__":
    sys.exit(main())
