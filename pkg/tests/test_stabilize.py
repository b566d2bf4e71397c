"""Fixpoint stabilization traces, regularization, and graph comparison."""

import itertools
import json
import random

import numpy as np
import pytest

from pqstab.graphs import Graph, from_spec
from pqstab.oracle import automorphisms, orbit_partition
from pqstab.stabilize import (
    DISTINGUISHED,
    EQUIVALENT,
    StabilizationTrace,
    compare_graphs,
    initial_partition,
    pq_stabilize,
    regularize,
    stabilize_graph,
)
from pqstab.tuples import KPartition, refines


# (generator spec, arity, mode) -> class count before refinement and after
# every application; the last entry repeats because the closing round is a
# no-op.  These traces are regression-frozen.
TRACES = {
    ("petersen", 2, "count"): [2, 2],
    ("cycle:6", 2, "count"): [2, 3, 3],
    ("cube", 2, "count"): [2, 3, 3],
    ("cube", 3, "count"): [7, 10, 10],
    ("path:4", 2, "count"): [2, 6, 6],
    ("twisted_cube", 2, "count"): [2, 3, 4, 4],
    ("twisted_cube", 2, "set"): [2, 2],
    ("twisted_cube", 3, "count"): [7, 18, 21, 21],
    ("twisted_cube", 3, "set"): [7, 18, 21, 21],
}


@pytest.mark.parametrize("spec,k,mode", sorted(TRACES))
def test_frozen_traces(spec, k, mode):
    trace = stabilize_graph(from_spec(spec), k, mode)
    expected = TRACES[(spec, k, mode)]
    assert trace.class_counts == expected
    assert trace.nu == len(expected) - 2
    assert trace.final.d == expected[-1]
    assert refines(trace.final, initial_partition(from_spec(spec), k))


def test_trace_final_is_a_fixpoint():
    trace = stabilize_graph(from_spec("twisted_cube"), 2, "count")
    again = pq_stabilize(trace.final, "count")
    assert again.nu == 0
    assert again.final == trace.final


def test_trace_serialization():
    trace = stabilize_graph(from_spec("cycle:6"), 2)
    doc = trace.to_dict()
    assert doc == {
        "mode": "count",
        "nu": 1,
        "class_counts": [2, 3, 3],
        "final_classes": 3,
        "final_class_sizes": sorted(int(s) for s in trace.final.class_sizes()),
    }
    full = json.loads(trace.to_json(include_partition=True))
    assert KPartition.from_dict(full["final"]) == trace.final


def test_path_stabilizes_to_its_orbit_partition():
    # Aut(P4) is just the end-to-end flip; refinement gets all the way down
    g = from_spec("path:4")
    trace = stabilize_graph(g, 2)
    grp = automorphisms(initial_partition(g, 2), method="exhaustive")
    assert grp.order == 2
    orb = orbit_partition(grp, 4, 2)
    assert orb == trace.final
    assert trace.final.d == 6


def test_set_mode_final_is_coarser_than_count_mode():
    g = from_spec("twisted_cube")
    fine = stabilize_graph(g, 2, "count").final
    coarse = stabilize_graph(g, 2, "set").final
    assert refines(fine, coarse)
    assert (fine.d, coarse.d) == (4, 2)


def test_stabilize_errors():
    L = KPartition.single_class(3, 3)
    with pytest.raises(ValueError, match="cannot assemble"):
        pq_stabilize(L)
    with pytest.raises(ValueError, match="mode must be one of"):
        pq_stabilize(KPartition.single_class(4, 2), mode="fast")


# -- initial partitions ------------------------------------------------------


def test_initial_partition_pairs_are_edge_classes():
    g = from_spec("petersen")
    L = initial_partition(g, 2)
    assert L.d == 2
    edges = {tuple(t) for t in L.classes()[L.class_of(g.edges[0])]}
    assert all((min(u, v), max(u, v)) in set(g.edges) for u, v in edges)
    assert len(edges) == 2 * g.num_edges


def test_initial_partition_respects_colors():
    plain = Graph.from_edges(4, [(0, 1), (2, 3)])
    colored = Graph.from_edges(4, [(0, 1), (2, 3)], colors=(0, 0, 1, 1))
    assert initial_partition(plain, 2).d == 2
    # coloring separates the two edges and orients the non-edges
    assert initial_partition(colored, 2).d > 2


def test_initial_partition_directed_orientation():
    arc = Graph.from_edges(3, [(0, 1)], directed=True)
    L = initial_partition(arc, 2)
    assert L.class_of((0, 1)) != L.class_of((1, 0))
    undirected = Graph.from_edges(3, [(0, 1)])
    assert initial_partition(undirected, 2).class_of((0, 1)) == initial_partition(
        undirected, 2
    ).class_of((1, 0))


def test_initial_partition_k1_single_class_without_colors():
    g = from_spec("cycle:5")
    assert initial_partition(g, 1).d == 1


# -- regularization ----------------------------------------------------------


def test_regularize_fixpoint_is_order_independent():
    L = initial_partition(from_spec("twisted_cube"), 2)
    count_results = set()
    set_results = set()
    for order in itertools.permutations(("s", "mp", "pq")):
        count_results.add(regularize(L, "count", order))
        set_results.add(regularize(L, "set", order))
    assert len(count_results) == 1 and len(set_results) == 1
    assert count_results.pop().d == 4
    assert set_results.pop().d == 2


def test_regularize_oriented_triangle_already_regular():
    tri = Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    L = initial_partition(tri, 2)
    assert L.d == 2
    assert regularize(L, "count") == L


def test_regularize_refines_input():
    L = initial_partition(from_spec("path:4"), 2)
    out = regularize(L, "count")
    assert refines(out, L)


def test_regularize_errors():
    L = KPartition.single_class(4, 2)
    with pytest.raises(ValueError, match="order must permute"):
        regularize(L, order=("s", "mp"))
    with pytest.raises(ValueError, match="arity >= 2"):
        regularize(KPartition.single_class(4, 1))


# -- two-graph comparison ----------------------------------------------------


def test_rook_vs_shrikhande_separated_only_at_triples():
    rook, shrik = from_spec("rook4"), from_spec("shrikhande")
    assert compare_graphs(rook, shrik, 2) == EQUIVALENT
    assert compare_graphs(rook, shrik, 2, "set") == EQUIVALENT
    assert compare_graphs(rook, shrik, 3) == DISTINGUISHED


def test_relabeled_copy_is_equivalent():
    rng = random.Random(7)
    g = from_spec("petersen")
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert compare_graphs(g, h, 2) == EQUIVALENT
    assert compare_graphs(g, h, 3) == EQUIVALENT


def test_different_sizes_and_degree_sequences_distinguish():
    assert compare_graphs(from_spec("cycle:5"), from_spec("cycle:6"), 2) == DISTINGUISHED
    assert compare_graphs(from_spec("path:4"), from_spec("cycle:4"), 2) == DISTINGUISHED


def test_compare_errors():
    g = from_spec("cycle:4")
    with pytest.raises(ValueError, match="needs n >="):
        compare_graphs(g, g, 4)
    with pytest.raises(ValueError, match="mode must be one of"):
        compare_graphs(g, g, 2, "fast")


def test_trace_type():
    assert isinstance(stabilize_graph(from_spec("cycle:5"), 2), StabilizationTrace)
