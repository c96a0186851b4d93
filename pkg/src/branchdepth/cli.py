"""Command-line front end.

JSON reports go to stdout, human-readable summaries to stderr.  Exit codes:
0 ok, 1 a checked inequality failed, 2 usage or parse error, 3 an
exhaustive search exceeded its cap.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Hashable, Optional, Sequence

from . import __version__
from .connectivity import CapExceeded, PreconditionError
from .decomposition import branch_depth_exact, decomposition_from_treedepth, width
from .formats import ParseError, detect_format, parse_graph, parse_labeled_matrix, parse_matroid, read_text
from .graph import Graph, cut_rank_oracle, edge_oracle, tree_depth
from .matroid import (
    cd_depth,
    contraction_depth,
    deletion_depth,
    longest_circuit_size,
    longest_cocircuit_size,
)
from .shrub import rank_depth, shrubbery_from_decomposition
from .suites import SUITES, run_suite, td_bound
from .wqo import find_good_pair, naturals

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _jsonable(x: Hashable):
    return x if isinstance(x, (int, str)) else str(x)


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _check(name: str, ok: bool) -> dict:
    return {"inequality": name, "ok": bool(ok)}


# -- graph-params ----------------------------------------------------------------------

def graph_report(g: Graph, source: str, bd_cap: int, td_cap: int) -> dict:
    report = {"input": source, "name": g.name, "n": g.n, "m": g.m, "bounds_only": False}
    t, forest = tree_depth(g, cap=td_cap)
    report["td"] = t
    report["elimination_forest"] = [None if p is None else _jsonable(g.vertices.elements[p]) for p in forest.parent]
    checks = []
    if g.m <= bd_cap:
        k, dec = branch_depth_exact(edge_oracle(g), cap=bd_cap)
        report["bd"] = k
        report["decomposition"] = dec.to_dict(g.edge_names, edge_oracle(g)) if dec else None
        if g.is_connected():
            checks.append(_check("bd - 1 <= td <= max(2 bd^2 - bd + 1, 2)", k - 1 <= t <= td_bound(k)))
    else:
        # bd <= td from the elimination forest; td <= 2bd^2 - bd + 1 gives the floor
        report["bounds_only"] = True
        upper = t
        if g.m >= 2:
            dec = decomposition_from_treedepth(g, forest)
            upper = max(width(dec, edge_oracle(g)), dec.radius())
        lower = next(k for k in range(0, t + 2) if td_bound(k) >= t) if g.is_connected() else 0
        report["bd"] = None
        report["bd_bounds"] = [lower, upper]
    if g.is_simple():
        report["rd"] = rank_depth(g, cap=max(bd_cap, 10))[0] if g.n <= max(bd_cap, 10) else None
    else:
        report["rd"] = None
    report["checks"] = checks
    return report


def cmd_graph_params(args) -> int:
    g = parse_graph(read_text(args.file))
    report = graph_report(g, args.file, args.bd_cap, args.td_cap)
    _say(f"{args.file}: n={g.n} m={g.m} td={report['td']} bd={report['bd']} rd={report['rd']}")
    _emit(report)
    return EXIT_OK if all(c["ok"] for c in report["checks"]) else EXIT_VIOLATION


# -- matroid-params ----------------------------------------------------------------------

def matroid_report(m, source: str, cap: int) -> dict:
    cd = contraction_depth(m, cap)
    dd = deletion_depth(m, cap)
    cdd = cd_depth(m, cap)
    bd = branch_depth_exact(m.oracle(), cap)[0]
    c = longest_circuit_size(m, max(cap, 14))
    cs = longest_cocircuit_size(m, max(cap, 14))
    seq = lambda r: [[_jsonable(e), op] for e, op in r.sequence()]
    return {
        "input": source,
        "n": m.n,
        "rank": m.rank(m.full),
        "cd": cd.value,
        "dd": dd.value,
        "cdd": cdd.value,
        "bd": bd,
        "longest_circuit": c,
        "longest_cocircuit": cs,
        "witnesses": {"cd": seq(cd), "dd": seq(dd), "cdd": seq(cdd)},
        "checks": [
            _check("bd <= cdd <= min(cd, dd)", bd <= cdd.value <= min(cd.value, dd.value)),
            _check("log2 c <= cd <= c(c+1)/2", math.log2(c) <= cd.value <= c * (c + 1) // 2),
            _check("log2 c* <= dd <= c*(c*+1)/2", math.log2(cs) <= dd.value <= cs * (cs + 1) // 2),
        ],
    }


def cmd_matroid_params(args) -> int:
    m = parse_matroid(read_text(args.file), args.backend)
    report = matroid_report(m, args.file, args.cap)
    _say(f"{args.file}: cd={report['cd']} dd={report['dd']} cdd={report['cdd']} bd={report['bd']}")
    _emit(report)
    return EXIT_OK if all(c["ok"] for c in report["checks"]) else EXIT_VIOLATION


# -- decompose ----------------------------------------------------------------------------

def cmd_decompose(args) -> int:
    text = read_text(args.file)
    if args.oracle == "matroid":
        m = parse_matroid(text)
        oracle, ground = m.oracle(), m.ground
    else:
        if detect_format(text) not in ("graph", "graphic"):
            raise ParseError("edge and rank oracles need a graph file")
        g = parse_graph(text)
        if args.oracle == "edge":
            oracle, ground = edge_oracle(g), g.edge_names
        else:
            if not g.is_simple():
                raise PreconditionError("the rank oracle needs a simple graph")
            oracle, ground = cut_rank_oracle(g), g.vertices
    k, dec = branch_depth_exact(oracle, args.cap)
    if dec is None:
        _say("branch-depth 0, no decomposition exists")
        if args.out == "json":
            _emit({"branch_depth": 0, "decomposition": None})
        return EXIT_OK
    _say(f"branch-depth {k}: width {width(dec, oracle)}, radius {dec.radius()}")
    text_out = dec.to_dot(ground) if args.out == "dot" else json.dumps(dec.to_dict(ground, oracle), indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text_out)
    else:
        sys.stdout.write(text_out)
    return EXIT_OK


def cmd_shrubbery(args) -> int:
    g = parse_graph(read_text(args.file))
    if not g.is_simple():
        raise PreconditionError("shrubberies are built for simple graphs")
    if g.n < 2:
        raise PreconditionError("need at least two vertices")
    k, dec = rank_depth(g, args.cap)
    build = shrubbery_from_decomposition(g, dec)
    out = build.shrubbery.to_dict(g)
    out["rank_depth"] = k
    out["host_sizes"] = list(build.host_sizes)
    out["loops_needed"] = build.loops_needed
    _say(f"rank-depth {k}: shrubbery depth {out['depth']}, {build.shrubbery.n_colors} colours")
    _emit(out)
    return EXIT_OK


# -- verify / wqo-scan ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    res = run_suite(args.suite, args.max_size, args.seed)
    _say(f"{res.name}: {'pass' if res.ok else 'FAIL'} ({res.checked} checks, {res.seconds}s)")
    report = res.to_dict()
    report.pop("seconds")
    _emit(report)
    return EXIT_OK if res.ok else EXIT_VIOLATION


def cmd_wqo_scan(args) -> int:
    seq = [parse_labeled_matrix(read_text(f)) for f in args.files]
    pair = find_good_pair(seq, naturals(), args.cap)
    if pair is None:
        _say("antichain prefix: no good pair")
        _emit({"files": args.files, "pair": None, "result": "antichain prefix"})
    else:
        i, j = pair
        _say(f"good pair ({i + 1}, {j + 1}): {args.files[i]} is a restriction of {args.files[j]}")
        _emit({"files": args.files, "pair": [i + 1, j + 1], "result": "good pair"})
    return EXIT_OK


# -- entry point ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="branchdepth", description="Branch-depth and related depth parameters.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("graph-params", help="tree-depth, branch-depth and rank-depth of a graph")
    a.add_argument("file")
    a.add_argument("--bd-cap", type=int, default=10, help="largest edge count for exact branch-depth")
    a.add_argument("--td-cap", type=int, default=15, help="largest vertex count for exact tree-depth")
    a.set_defaults(func=cmd_graph_params)

    a = sub.add_parser("matroid-params", help="cd, dd, cdd, branch-depth and circuit sizes")
    a.add_argument("file")
    a.add_argument("--backend", choices=["auto", "linear", "graphic", "uniform"], default="auto")
    a.add_argument("--cap", type=int, default=10)
    a.set_defaults(func=cmd_matroid_params)

    a = sub.add_parser("decompose", help="an optimal decomposition as DOT or JSON")
    a.add_argument("file")
    a.add_argument("--oracle", choices=["edge", "rank", "matroid"], default="edge")
    a.add_argument("--out", choices=["dot", "json"], default="json")
    a.add_argument("--output", "-o", help="write here instead of stdout")
    a.add_argument("--cap", type=int, default=10)
    a.set_defaults(func=cmd_decompose)

    a = sub.add_parser("shrubbery", help="shrubbery from an exact rank-depth decomposition")
    a.add_argument("file")
    a.add_argument("--cap", type=int, default=10)
    a.set_defaults(func=cmd_shrubbery)

    a = sub.add_parser("verify", help="run a verification suite")
    a.add_argument("suite", choices=sorted(SUITES))
    a.add_argument("--max-size", type=int, default=None)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_verify)

    a = sub.add_parser("wqo-scan", help="first good pair in a sequence of labelled matrices")
    a.add_argument("files", nargs="+")
    a.add_argument("--cap", type=int, default=10)
    a.set_defaults(func=cmd_wqo_scan)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        _say(f"error: {exc}")
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE
    except AssertionError as exc:
        _say(f"violation: {exc}")
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
