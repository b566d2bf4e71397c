"""Command-line surface.

Every subcommand reads one graph (or two for ``compare``), runs a pipeline
and emits text or JSON.  JSON output is an envelope ``{"meta": …, "data": …}``
whose data section is byte-stable across runs — no timestamps anywhere.

Exit status: 0 for a completed analysis regardless of verdict, 2 for usage
or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .certify import certify
from .graphs import Graph, from_spec, parse_dimacs, parse_graph6, parse_json
from .linsys import build_pair_sum_system
from .oracle import automorphisms, graph_automorphisms, orbit_partition
from .ops import assemble, project_partition
from .probe import DEFAULT_ORACLE_LIMIT, run_probe
from .stabilize import compare_graphs, initial_partition, stabilize_graph
from .tensor import intersection_numbers, srg_parameters
from .tuples import KPartition


class UsageError(Exception):
    pass


def _read_graph(args, which: str = "") -> Graph:
    path = getattr(args, "input" + which)
    spec = getattr(args, "gen" + which)
    if (path is None) == (spec is None):
        raise UsageError(
            f"exactly one of --input{which}/--gen{which} must be given"
        )
    if spec is not None:
        return from_spec(spec)
    if path == "-":
        line = sys.stdin.readline()
        if not line.strip():
            raise UsageError("no graph6 line on standard input")
        return parse_graph6(line)
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    lower = path.lower()
    if lower.endswith(".json"):
        return parse_json(text)
    if lower.endswith((".dimacs", ".col")):
        return parse_dimacs(text)
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    return parse_graph6(first)


def _partition_for(args, graph: Graph) -> KPartition:
    stage = getattr(args, "partition", "stabilized")
    if stage == "raw":
        return initial_partition(graph, args.k)
    if stage == "assembled":
        if args.k < 3:
            raise UsageError("--partition assembled needs --k >= 3")
        return assemble(initial_partition(graph, args.k - 1))
    return stabilize_graph(graph, args.k, args.mode).final


def _emit(args, command: str, data: dict, text_lines) -> None:
    if args.format == "json":
        options = {
            key: getattr(args, key)
            for key in sorted(vars(args))
            if key not in ("func", "format", "out", "command")
            and getattr(args, key) is not None
        }
        doc = {
            "meta": {"tool": "pqstab", "version": __version__, "command": command,
                     "options": options},
            "data": data,
        }
        payload = json.dumps(doc, separators=(",", ":")) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# ---------------------------------------------------------------------------
# subcommands


def cmd_stabilize(args) -> None:
    graph = _read_graph(args)
    trace = stabilize_graph(graph, args.k, args.mode)
    data = trace.to_dict()
    lines = [
        f"stabilize: n={graph.n} k={args.k} mode={args.mode}",
        f"rounds (class counts): {data['class_counts']}",
        f"refining rounds: {data['nu']}",
        f"final classes: {data['final_classes']}",
    ]
    _emit(args, "stabilize", data, lines)


def cmd_certify(args) -> None:
    graph = _read_graph(args)
    part = _partition_for(args, graph)
    report = certify(part, args.mode)
    data = report.to_dict()
    lines = [f"certify: n={graph.n} k={part.k} classes={part.d} "
             f"partition={getattr(args, 'partition', 'stabilized')} mode={args.mode}"]
    for name, entry in data["verdicts"].items():
        mark = "yes" if entry["holds"] else "NO"
        lines.append(f"  {name}: {mark}")
        if entry["witness"] is not None and not entry["holds"]:
            lines.append(f"    witness: {json.dumps(entry['witness'], separators=(',', ':'))}")
    _emit(args, "certify", data, lines)


def cmd_orbits(args) -> None:
    graph = _read_graph(args)
    group = graph_automorphisms(graph, limit=args.oracle_limit)
    orbits = orbit_partition(group, graph.n, args.k)
    trace = stabilize_graph(graph, args.k, args.mode)
    automorphic = orbits == trace.final
    data = {
        "n": graph.n,
        "k": args.k,
        "aut_order": group.order,
        "orbit_classes": orbits.d,
        "stabilized_classes": trace.final.d,
        "stabilized_is_automorphic": automorphic,
    }
    lines = [
        f"orbits: n={graph.n} k={args.k}",
        f"|Aut| = {group.order}",
        f"orbit classes: {orbits.d}",
        f"stabilized classes: {trace.final.d}",
        f"stabilized partition equals the orbit partition: {automorphic}",
    ]
    _emit(args, "orbits", data, lines)


def cmd_compare(args) -> None:
    g = _read_graph(args)
    h = _read_graph(args, "2")
    verdict = compare_graphs(g, h, args.k, args.mode)
    note = (
        "conclusively different graphs"
        if verdict == "Distinguished"
        else f"not separated at level k={args.k}; this does NOT assert isomorphism"
    )
    data = {"verdict": verdict, "k": args.k, "note": note}
    _emit(args, "compare", data, [f"compare: {verdict} ({note})"])


def cmd_srg(args) -> None:
    graph = _read_graph(args)
    result = srg_parameters(graph)
    inter = intersection_numbers(initial_partition(graph, 2))
    data = {"srg": result.to_dict(), "intersection_numbers": inter.to_dict()}
    lam = "-" if result.lam is None else result.lam
    mu = "-" if result.mu is None else result.mu
    lines = [
        f"srg check: n={result.n} degree={result.degree} lambda={lam} mu={mu}",
        f"parameters constant: {result.holds}",
        f"recoloring identity verified: {result.transform_verified}",
        f"intersection numbers constant: {inter.ok}",
    ]
    _emit(args, "srg", data, lines)


def cmd_probe7(args) -> None:
    graph = _read_graph(args)
    report = run_probe(graph, oracle_limit=args.oracle_limit, mode=args.mode,
                       pair_source=args.pair_source)
    lines = [
        f"probe: n={report['n']}",
        f"stabilized classes: {report['stabilization']['final_classes']} "
        f"(rounds {report['stabilization']['class_counts']})",
        f"strongly regular: {report['certificate']['verdicts']['strongly_regular']['holds']}",
        f"|Aut|: {report['aut']['order'] if report['aut']['status'] == 'computed' else report['aut']['reason']}",
        f"system: {report['system']['equations']} equations, "
        f"{report['system']['variables']} variables, rank {report['system']['rank']}",
        f"flag raised: {report['flag']['raised']} ({report['flag']['reason']})",
    ]
    _emit(args, "probe7", report, lines)


def cmd_sx(args) -> None:
    graph = _read_graph(args)
    trace = stabilize_graph(graph, 3, args.mode)
    aut = None
    if args.pair_source == "orbit-reduced":
        aut = automorphisms(trace.final, method="backtracking", limit=args.oracle_limit)
    system = build_pair_sum_system(trace.final, pair_source=args.pair_source, aut=aut)
    l2 = project_partition(trace.final, args.mode)
    data = {
        **system.to_dict(),
        "constants_solve": system.constants_solve(),
        "pair_classes": l2.d,
        "distinct_class_solution": system.distinct_class_solution(l2),
    }
    lines = [
        f"pair-sum system: n={graph.n} source={args.pair_source}",
        f"equations: {data['equations']}  variables: {data['variables']}",
        f"rank: {data['rank']}  solution space dimension: {data['solution_space_dim']}",
        f"constants solve: {data['constants_solve']}",
        f"solution separating all pair classes: {data['distinct_class_solution']}",
    ]
    _emit(args, "sx", data, lines)


# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, two_graphs: bool = False,
                with_k: bool = True) -> None:
    p.add_argument("--input", help="graph file (graph6, .json, .dimacs/.col) or - for stdin")
    p.add_argument("--gen", help="generator spec, e.g. petersen or cycle:6")
    if two_graphs:
        p.add_argument("--input2", help="second graph file")
        p.add_argument("--gen2", help="second generator spec")
    if with_k:
        p.add_argument("--k", type=int, default=2, choices=(2, 3, 4), help="tuple arity")
    p.add_argument("--mode", choices=("count", "set"), default="count",
                   help="projection multiplicity semantics")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--oracle-limit", dest="oracle_limit", type=int,
                   default=DEFAULT_ORACLE_LIMIT,
                   help="largest n the automorphism oracle will attempt")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqstab",
        description="Tuple-partition refinement, symmetry certificates and "
                    "automorphism probes for graphs.",
    )
    parser.add_argument("--version", action="version", version=f"pqstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stabilize", help="refine a graph's tuple partition to its fixpoint")
    _add_common(p)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("certify", help="symmetry certificate for a graph's partition")
    _add_common(p)
    p.add_argument("--partition", choices=("raw", "stabilized", "assembled"),
                   default="stabilized",
                   help="certify the initial partition, its stabilization, or "
                        "the assembly lifted from arity k-1")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("orbits", help="oracle orbits versus the stabilized partition")
    _add_common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("compare", help="lockstep stabilization of two graphs")
    _add_common(p, two_graphs=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("srg", help="strongly-regular parameters and intersection numbers")
    _add_common(p, with_k=False)
    p.set_defaults(func=cmd_srg)

    p = sub.add_parser("probe7", help="stabilize at arity 3 and probe the "
                                      "strong-regularity/automorphism connection")
    _add_common(p, with_k=False)
    p.add_argument("--pair-source", dest="pair_source", choices=("all", "orbit-reduced"),
                   default="all")
    p.set_defaults(func=cmd_probe7)

    p = sub.add_parser("sx", help="pair-sum linear system statistics")
    _add_common(p, with_k=False)
    p.add_argument("--pair-source", dest="pair_source", choices=("all", "orbit-reduced"),
                   default="all")
    p.set_defaults(func=cmd_sx)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
