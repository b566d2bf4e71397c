"""Projection, assembly, multiprojection, and l-fullness operators."""

import numpy as np
import pytest

from pqstab import (
    KPartition,
    assemble,
    drop_projections,
    from_spec,
    full_closure,
    initial_partition,
    is_l_full,
    multiproject,
    partition_from_labels,
    project_partition,
    refines,
)


def test_drop_projections_of_a_pair():
    # entry j omits coordinate j: <a,b> -> [<b>, <a>]
    assert drop_projections((5, 2)) == [(2,), (5,)]
    assert drop_projections((1, 2, 3)) == [(2, 3), (1, 3), (1, 2)]


def test_assemble_path_of_length_two():
    # P_3 edge/non-edge pairs assemble into exactly three triple classes,
    # grouped by the ordered signature of the three drop projections.
    p3 = from_spec("path:3")
    lifted = assemble(initial_partition(p3, 2))
    assert lifted.d == 3
    want = [
        [(0, 1, 2), (2, 1, 0)],
        [(0, 2, 1), (2, 0, 1)],
        [(1, 0, 2), (1, 2, 0)],
    ]
    assert [[tuple(r) for r in lifted.members(c)] for c in range(3)] == want


def test_assemble_needs_room():
    with pytest.raises(ValueError, match="exceeds"):
        assemble(KPartition.single_class(3, 3))


def test_assemble_single_class_of_complete_graph_stays_single():
    k4 = from_spec("complete:4")
    part = initial_partition(k4, 2)
    assert part.d == 1
    assert assemble(part).d == 1


def test_project_round_trip_refines_input():
    for spec in ("path:4", "cycle:5", "cube"):
        graph = from_spec(spec)
        part = initial_partition(graph, 2)
        for mode in ("count", "set"):
            back = project_partition(assemble(part), mode)
            assert refines(back, part)


def test_project_count_refines_set():
    graph = from_spec("twisted_cube")
    lifted = assemble(initial_partition(graph, 2))
    by_count = project_partition(lifted, "count")
    by_set = project_partition(lifted, "set")
    assert refines(by_count, by_set)


def test_project_rejects_k1_and_bad_mode():
    part = KPartition.single_class(4, 2)
    with pytest.raises(ValueError):
        project_partition(part, "median")
    with pytest.raises(ValueError):
        project_partition(KPartition.single_class(4, 1))


def test_multiproject_counts_rows():
    k4 = from_spec("complete:4")
    part = initial_partition(k4, 3)  # single class: all triples
    klass = [tuple(r) for r in part.members(0)]
    mp = multiproject(klass, (1, 2))
    # each ordered pair extends to n-2 = 2 triples
    assert mp.arity == 2
    assert mp.homogeneous
    assert set(mp.rows.values()) == {2}
    assert mp.total == len(klass)


def test_multiproject_validates_subspace():
    triples = [(0, 1, 2)]
    with pytest.raises(ValueError):
        multiproject(triples, ())
    with pytest.raises(ValueError):
        multiproject(triples, (1, 2, 3))  # not proper
    with pytest.raises(ValueError):
        multiproject(triples, (0, 1))  # positions are 1-based
    with pytest.raises(ValueError):
        multiproject([], (1,))


def test_full_closure_grows_to_cartesian_like_set():
    # U = {(0,1)}: 1-projections are {0} and {1}, closure = {(0,1)} itself
    assert full_closure([(0, 1)], 1, 4) == [(0, 1)]
    # U = {(0,1),(1,0)}: projections {0,1} x {0,1} minus diagonal
    assert full_closure([(0, 1), (1, 0)], 1, 4) == [(0, 1), (1, 0)]
    # adding (0,2) lets (1,2) through as well
    got = full_closure([(0, 1), (1, 0), (0, 2)], 1, 4)
    assert got == [(0, 1), (0, 2), (1, 0), (1, 2)]


def test_is_l_full_on_trivial_partitions():
    # singleton classes are always l-full; so is the single-class partition
    assert is_l_full(KPartition.discrete(4, 2), 1)
    assert is_l_full(KPartition.single_class(4, 2), 1)


def test_l_full_witness_is_sound():
    from pqstab.ops import _l_full_witness

    # edges of a path graph are not 1-full: their endpoints cover all of
    # 0..n-1 so the closure floods past the class
    p4 = from_spec("path:4")
    part = initial_partition(p4, 2)
    witness = _l_full_witness(part, 1)
    assert witness is not None
    c, extra = witness
    members = [tuple(r) for r in part.members(c)]
    assert extra not in members
    assert extra in full_closure(members, 1, 4)


def test_full_closure_shrinks_as_l_grows():
    cycle = from_spec("cycle:5")
    part = initial_partition(cycle, 3)
    for c in range(part.d):
        klass = [tuple(r) for r in part.members(c)]
        c1 = set(full_closure(klass, 1, 5))
        c2 = set(full_closure(klass, 2, 5))
        assert c2 <= c1
        assert set(klass) <= c2
