"""Command-line entry point: ``bsstar <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import decycle, exact, graph, metrics
from .errors import BSStarError, ParseError, ResourceError
from .kernels import BACKEND_NAME
from .perm import Permutation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Outcome(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(args: argparse.Namespace, payload: dict[str, Any], lines: Sequence[str]) -> None:
    if getattr(args, "format", "table") == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))


def _graph(args: argparse.Namespace, n: int) -> graph.BubbleSortStarGraph:
    mode = graph.AdjacencyMode.IMPLICIT if args.implicit else graph.AdjacencyMode.CACHED
    return graph.build(n, mode, cap_override=args.cap_override)


def _perm(text: str, n: int | None = None) -> Permutation:
    p = Permutation.parse(text)
    if n is not None and p.n != n:
        raise ParseError(f"{text!r} has {p.n} symbols, expected {n}")
    return p


def _dimension(n: int) -> int:
    if n < 3:
        raise _Outcome(EXIT_USAGE, f"n must be >= 3, got {n}")
    return n


def cmd_bounds(args: argparse.Namespace) -> int:
    rep = decycle.bounds_report(_dimension(args.n))
    lines = [
        f"n                   {rep.n}",
        f"lower bound         {rep.lower}",
        f"upper (construct.)  {rep.upper_constructive}",
        f"upper (trivial)     {rep.upper_trivial}",
    ]
    if rep.exact is not None:
        lines.append(f"D({rep.n}) = {rep.exact} (exact)")
    else:
        lines.append(f"{rep.lower} <= D({rep.n}) <= {rep.upper_constructive}")
    _emit(args, rep.to_dict(), lines)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    n = _dimension(args.n)
    base = _perm(args.base, n) if args.base else None
    cert = decycle.construct(n, base)
    text = cert.to_json()
    summary = {
        "n": n,
        "method": cert.method.value,
        "base": str(cert.base),
        "reserved": len(cert.reserved),
        "removed_count": cert.removed_count,
    }
    lines = [f"{k:<14}{v}" for k, v in summary.items()]
    if args.out:
        Path(args.out).write_text(text)
        summary["out"] = args.out
        lines.append(f"{'written to':<14}{args.out}")
        _emit(args, summary, lines)
    else:
        sys.stdout.write(text)
        sys.stderr.write("".join(line + "\n" for line in lines))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        text = Path(args.cert).read_text()
    except OSError as exc:
        raise _Outcome(EXIT_USAGE, f"cannot read certificate: {exc}") from exc
    cert = decycle.DecyclingCertificate.from_json(text)
    g = _graph(args, cert.n)
    report = decycle.verify_certificate(g, cert, deep=args.deep)
    _emit(args, report.to_dict(), report.lines())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_distance(args: argparse.Namespace) -> int:
    n = _dimension(args.n)
    u = _perm(args.source, n)
    v = _perm(args.target, n)
    d = metrics.distance(_graph(args, n), u, v)
    _emit(args, {"n": n, "from": str(u), "to": str(v), "distance": d}, [f"d({u}, {v}) = {d}"])
    return EXIT_OK


def cmd_diameter(args: argparse.Namespace) -> int:
    n = _dimension(args.n)
    d = metrics.diameter(_graph(args, n), cross_check=args.cross_check, seed=args.seed)
    _emit(args, {"n": n, "diameter": d}, [f"diam(BS_{n}) = {d}"])
    return EXIT_OK


def cmd_route(args: argparse.Namespace) -> int:
    n = _dimension(args.n)
    base = _perm(args.base, n) if args.base else Permutation.identity(n)
    plan = metrics.rotation_route(base, args.k)
    formula = metrics.rotation_distance_formula(n, args.k)
    payload: dict[str, Any] = {
        "n": n,
        "k": args.k,
        "start": str(plan.start),
        "target": str(plan.target),
        "moves": plan.move_strings(),
        "length": len(plan),
        "formula": formula,
    }
    lines = [
        f"{plan.start} -> {plan.target}",
        "moves: " + " ".join(plan.move_strings()),
        f"length {len(plan)}, formula {formula}",
    ]
    ok = plan.is_valid() and len(plan) == formula
    if args.bfs:
        d = metrics.distance(_graph(args, n), plan.start, plan.target)
        payload["bfs"] = d
        lines.append(f"bfs distance {d}")
        ok = ok and d == len(plan)
    payload["ok"] = ok
    if not ok:
        lines.append("MISMATCH between route, formula and/or BFS")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_exact(args: argparse.Namespace) -> int:
    if args.edges:
        try:
            text = Path(args.edges).read_text()
        except OSError as exc:
            raise _Outcome(EXIT_USAGE, f"cannot read edge list: {exc}") from exc
        num_vertices, edges = exact.read_edge_list(text)
        result = exact.exact_fvs_generic(num_vertices, edges, args.budget)
        label = args.edges
    else:
        if args.n is None:
            raise _Outcome(EXIT_USAGE, "exact needs n or --edges FILE")
        n = _dimension(args.n)
        result = exact.exact_fvs(_graph(args, n), args.budget, cap_override=args.cap_override)
        label = f"BS_{n}"
    payload = {
        "graph": label,
        "optimum": result.optimum,
        "optimal_set": result.optimal_set,
        "nodes_explored": result.nodes_explored,
        "elapsed_s": round(result.elapsed, 6),
    }
    if result.found:
        lines = [f"minimum decycling number: {result.optimum}",
                 f"nodes explored {result.nodes_explored}, {result.elapsed:.3f} s"]
    else:
        lines = [f"no solution within budget {args.budget}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    g = _graph(args, _dimension(args.n))
    text = graph.export(g, args.format, allow_large=args.allow_large)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_independent_check(args: argparse.Namespace) -> int:
    n = _dimension(args.n)
    if args.cert:
        cert = decycle.DecyclingCertificate.from_json(Path(args.cert).read_text())
        labels = list(cert.reserved)
        if cert.n != n:
            raise _Outcome(EXIT_USAGE, f"certificate is for n={cert.n}")
    else:
        labels = [_perm(s, n) for s in args.vertices]
    if not labels:
        raise _Outcome(EXIT_USAGE, "no vertices given")
    g = _graph(args, n)
    res = metrics.is_distance_k_independent(g, [g.index(p) for p in labels], args.k)
    payload: dict[str, Any] = {"n": n, "k": args.k, "size": len(labels), "independent": res.independent}
    lines = [f"{len(labels)} vertices, distance-{args.k} independent: {'yes' if res else 'no'}"]
    if not res:
        v, w, d = res.witness
        payload["witness"] = {"u": str(g.vertex(v)), "v": str(g.vertex(w)), "distance": d}
        lines.append(f"witness: d({g.vertex(v)}, {g.vertex(w)}) = {d}")
    _emit(args, payload, lines)
    return EXIT_OK if res else EXIT_FAIL


def version_string() -> str:
    return f"bsstar ({BACKEND_NAME} kernels)"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsstar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=version_string())
    adj = parser.add_mutually_exclusive_group()
    adj.add_argument("--cache", action="store_true", help="precompute the neighbor table (default)")
    adj.add_argument("--implicit", action="store_true", help="compute neighbors on the fly")
    parser.add_argument("--cap-override", action="store_true", help="allow n above the default cap")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized cross-checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("bounds", help="lower/upper bounds on the decycling number")
    p.add_argument("n", type=int)
    fmt(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="write a decycling certificate")
    p.add_argument("n", type=int)
    p.add_argument("--base", help="odd base vertex, e.g. 12354")
    p.add_argument("--out", help="certificate path (default: stdout)")
    fmt(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--deep", action="store_true", help="also check distance structure")
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distance", help="BFS distance between two labels")
    p.add_argument("n", type=int)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    fmt(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("diameter", help="diameter of BS_n")
    p.add_argument("n", type=int)
    p.add_argument("--cross-check", type=int, default=0, metavar="K",
                   help="compare eccentricity from K random vertices")
    fmt(p)
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("route", help="greedy route from a rotation back to its base")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--base", help="base label (default: identity)")
    p.add_argument("--bfs", action="store_true", help="also compare with the BFS distance")
    fmt(p)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("exact", help="exact minimum decycling set (tiny graphs)")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--edges", help="solve an edge-list file instead of BS_n")
    p.add_argument("--budget", type=int, default=None, help="largest solution size to try")
    fmt(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("export", help="DOT or edge-list export")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("dot", "edgelist"), default="dot")
    p.add_argument("--out")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("independent-check", help="distance-k independence of a vertex set")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--cert", help="use the reserved set of a certificate")
    p.add_argument("--vertices", nargs="+", default=[], metavar="PERM")
    fmt(p)
    p.set_defaults(func=cmd_independent_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Outcome as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except ResourceError as exc:
        sys.stderr.write(f"resource error: {exc}\n")
        return EXIT_RESOURCE
    except (BSStarError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
