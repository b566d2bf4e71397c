"""End-to-end probe: stabilize at arity 3, certify, bound the automorphism
group, and analyze the pair-sum system.

The probe never asserts the conjectured connection between strong regularity
and automorphisms — it reports raw facts and raises a flag on the one
combination that would contradict it: a strongly regular, nontrivially
stabilized 3-partition whose automorphism group is trivial.
"""

from __future__ import annotations

import json

from .certify import certify
from .graphs import Graph
from .linsys import build_pair_sum_system
from .oracle import automorphisms
from .ops import project_partition
from .stabilize import stabilize_graph
from .tuples import falling

DEFAULT_ORACLE_LIMIT = 20


def run_probe(graph: Graph, oracle_limit: int = DEFAULT_ORACLE_LIMIT,
              mode: str = "count", pair_source: str = "all") -> dict:
    """Full probe report for one graph; every field is always populated."""
    n = graph.n
    if n < 4:
        raise ValueError(f"probe needs n >= 4 to work at arity 3, got n={n}")
    trace = stabilize_graph(graph, 3, mode)
    final = trace.final
    report = certify(final, mode)

    aut: dict
    group = None
    if n > oracle_limit:
        aut = {
            "status": "not computed",
            "order": None,
            "reason": f"n={n} exceeds oracle limit {oracle_limit}",
        }
    else:
        try:
            group = automorphisms(final, method="backtracking", limit=oracle_limit)
            aut = {"status": "computed", "order": group.order, "reason": None}
        except ValueError as exc:
            aut = {"status": "not computed", "order": None, "reason": str(exc)}

    system = build_pair_sum_system(
        final,
        pair_source=pair_source,
        aut=group if (pair_source == "orbit-reduced" and group is not None) else None,
    )
    l2 = project_partition(final, mode)
    separating = system.distinct_class_solution(l2)

    strongly_regular = report.holds("strongly_regular")
    nontrivial = 1 < final.d < falling(n, 3)
    if aut["status"] != "computed":
        raised = False
        reason = "automorphism count unavailable; cannot evaluate"
    elif not strongly_regular:
        raised = False
        reason = "stabilized partition is not strongly regular"
    elif not nontrivial:
        raised = False
        reason = "stabilized partition is trivial (single class or discrete)"
    elif aut["order"] > 1:
        raised = False
        reason = f"automorphism group is nontrivial (order {aut['order']})"
    else:
        raised = True
        reason = (
            "counterexample candidate: strongly regular nontrivial stabilized "
            "3-partition with trivial automorphism group"
        )

    return {
        "n": n,
        "mode": mode,
        "stabilization": trace.to_dict(),
        "certificate": report.to_dict(),
        "aut": aut,
        "system": {
            **system.to_dict(),
            "constants_solve": system.constants_solve(),
            "pair_classes": l2.d,
            "distinct_class_solution": separating,
            "distinct_class_solution_note": (
                "not evaluated: too many pair classes" if separating is None else None
            ),
        },
        "flag": {"raised": raised, "reason": reason},
    }


def probe_to_json(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"))
