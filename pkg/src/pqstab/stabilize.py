"""Fixpoint refinement: stabilization, regularization, graph entry points,
and the two-graph comparison harness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernel
from .graphs import Graph
from .ops import MODES, assemble, project_partition
from .certify import _subspace_family
from .tuples import KPartition, falling, meet, rank_rows, tuple_table

DISTINGUISHED = "Distinguished"
EQUIVALENT = "Equivalent"


@dataclass
class StabilizationTrace:
    mode: str
    class_counts: list  # d before refinement, then after every application
    final: KPartition

    @property
    def nu(self) -> int:
        """Number of refining rounds (the final no-change round not counted)."""
        return len(self.class_counts) - 2

    def to_dict(self, include_partition: bool = False) -> dict:
        doc = {
            "mode": self.mode,
            "nu": self.nu,
            "class_counts": list(self.class_counts),
            "final_classes": self.final.d,
            "final_class_sizes": sorted(int(s) for s in self.final.class_sizes()),
        }
        if include_partition:
            doc["final"] = self.final.to_dict()
        return doc

    def to_json(self, include_partition: bool = False) -> str:
        return json.dumps(self.to_dict(include_partition), separators=(",", ":"))


def pq_stabilize(L: KPartition, mode: str = "count") -> StabilizationTrace:
    """Iterate project∘assemble to its least fixpoint above L.

    Each round strictly refines or terminates; the trace records the class
    count before refinement and after every application (the last entry
    repeats when the final round makes no change).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if L.k + 1 > L.n:
        raise ValueError(f"cannot assemble: k+1={L.k + 1} exceeds n={L.n}")
    counts = [L.d]
    current = L
    for _ in range(L.size + 1):
        refined = project_partition(assemble(current), mode)
        counts.append(refined.d)
        if refined == current:
            return StabilizationTrace(mode=mode, class_counts=counts, final=current)
        current = refined
    raise AssertionError("stabilization failed to converge within the class-count bound")


def initial_partition(graph: Graph, k: int) -> KPartition:
    """Label each k-tuple by the ordered adjacency pattern of its coordinates
    (plus vertex colors when present)."""
    n = graph.n
    table = tuple_table(n, k)
    adj = graph.adjacency()
    cols = []
    if graph.colors is not None:
        colors = np.asarray(graph.colors, dtype=np.int64)
        for i in range(k):
            cols.append(colors[table[:, i]])
    for i, j in combinations(range(k), 2):
        cols.append(adj[table[:, i], table[:, j]].astype(np.int64))
        if graph.directed:
            cols.append(adj[table[:, j], table[:, i]].astype(np.int64))
    if not cols:
        cols.append(np.zeros(table.shape[0], dtype=np.int64))
    return KPartition.from_key_matrix(n, k, np.stack(cols, axis=1))


def stabilize_graph(graph: Graph, k: int, mode: str = "count") -> StabilizationTrace:
    return pq_stabilize(initial_partition(graph, k), mode)


# ---------------------------------------------------------------------------
# regularization


def _transposition_image(L: KPartition, i: int) -> KPartition:
    table = tuple_table(L.n, L.k)
    cols = list(range(L.k))
    cols[i], cols[i + 1] = cols[i + 1], cols[i]
    return KPartition(L.n, L.k, L.labels[rank_rows(table[:, cols], L.n)])


def _s_step(L: KPartition) -> KPartition:
    out = L
    for i in range(L.k - 1):
        out = meet(out, _transposition_image(out, i))
    return out


def _mp_step(L: KPartition) -> KPartition:
    family, _ = _subspace_family(L.k)
    table = tuple_table(L.n, L.k)
    cols = [L.labels]
    for W in family:
        idx = [p - 1 for p in W]
        proj = rank_rows(table[:, idx], L.n)
        pairs = L.labels * falling(L.n, len(W)) + proj
        _, inverse, counts = np.unique(pairs, return_inverse=True, return_counts=True)
        cols.append(counts[inverse])
    return KPartition.from_key_matrix(L.n, L.k, np.stack(cols, axis=1))


def _pq_step(L: KPartition, mode: str) -> KPartition:
    if L.k + 1 > L.n:
        return L
    return project_partition(assemble(L), mode)


_REG_STEPS = {"s": _s_step, "mp": _mp_step, "pq": _pq_step}


def regularize(L: KPartition, mode: str = "count", order=("s", "mp", "pq")) -> KPartition:
    """Refine L until the transposition, multiplicity and projection steps
    all fix it.  The step order is configurable (the fixpoint should not
    depend on it; tests assert that on the corpus)."""
    if sorted(order) != sorted(_REG_STEPS):
        raise ValueError(f"order must permute {tuple(_REG_STEPS)}, got {order!r}")
    if L.k < 2:
        raise ValueError("regularization needs arity >= 2")
    current = L
    while True:
        start = current
        for name in order:
            step = _REG_STEPS[name]
            current = step(current, mode) if name == "pq" else step(current)
        if current == start:
            return current


# ---------------------------------------------------------------------------
# two-graph comparison


def _initial_keys(graph: Graph, k: int) -> np.ndarray:
    n = graph.n
    table = tuple_table(n, k)
    adj = graph.adjacency()
    cols = []
    if graph.colors is not None:
        colors = np.asarray(graph.colors, dtype=np.int64)
        for i in range(k):
            cols.append(colors[table[:, i]])
    else:
        cols.append(np.zeros(table.shape[0], dtype=np.int64))
    for i, j in combinations(range(k), 2):
        cols.append(adj[table[:, i], table[:, j]].astype(np.int64))
        if graph.directed or graph.colors is not None:
            cols.append(adj[table[:, j], table[:, i]].astype(np.int64))
    return np.stack(cols, axis=1)


def _joint_group(mat_g: np.ndarray, mat_h: np.ndarray):
    """Group rows of both matrices together, ids ordered by row value so the
    naming is independent of which graph comes first."""
    labels, d = kernel.group_rows(np.vstack([mat_g, mat_h]), first_occurrence=False)
    return labels[: len(mat_g)], labels[len(mat_g) :], d


def _drop_signature(labels: np.ndarray, n: int, k: int) -> np.ndarray:
    table = tuple_table(n, k + 1)
    sig = np.empty((table.shape[0], k + 1), dtype=np.int64)
    for j in range(k + 1):
        sig[:, j] = labels[rank_rows(np.delete(table, j, axis=1), n)]
    return sig


def _project_keys(labels: np.ndarray, n: int, k: int, mode: str, nclasses: int) -> np.ndarray:
    """Sorted membership-key rows per k-tuple, given (k+1)-tuple labels."""
    table = tuple_table(n, k + 1)
    nk1 = table.shape[0]
    owners = np.empty(nk1 * (k + 1), dtype=np.int64)
    keys = np.empty(nk1 * (k + 1), dtype=np.int64)
    for j in range(k + 1):
        owners[j * nk1 : (j + 1) * nk1] = rank_rows(np.delete(table, j, axis=1), n)
        keys[j * nk1 : (j + 1) * nk1] = labels * (k + 1) + j
    order = np.lexsort((keys, owners))
    block = (k + 1) * (n - k)
    mat = keys[order].reshape(falling(n, k), block)
    if mode == "set":
        mat = mat.copy()
        sentinel = nclasses * (k + 1)
        dup = mat[:, 1:] == mat[:, :-1]
        mat[:, 1:][dup] = sentinel
        mat.sort(axis=1)
    return mat


def compare_graphs(g: Graph, h: Graph, k: int, mode: str = "count") -> str:
    """Stabilize both graphs in lockstep with shared class names and compare
    class-size histograms.

    ``Equivalent`` means "not separated at level k" — it is NOT a claim of
    isomorphism.  ``Distinguished`` is conclusive.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if g.n != h.n:
        return DISTINGUISHED
    n = g.n
    if k + 1 > n:
        raise ValueError(f"comparison at arity {k} needs n >= {k + 1}")
    lab_g, lab_h, d = _joint_group(_initial_keys(g, k), _initial_keys(h, k))
    for _ in range(2 * falling(n, k) + 1):
        sig_g = _drop_signature(lab_g, n, k)
        sig_h = _drop_signature(lab_h, n, k)
        alab_g, alab_h, ad = _joint_group(sig_g, sig_h)
        keys_g = _project_keys(alab_g, n, k, mode, ad)
        keys_h = _project_keys(alab_h, n, k, mode, ad)
        new_g, new_h, nd = _joint_group(keys_g, keys_h)
        # each round refines the joint partition, so an unchanged class
        # count already means the fixpoint was reached
        done = nd == d
        lab_g, lab_h, d = new_g, new_h, nd
        if done:
            break
    else:
        raise AssertionError("lockstep refinement failed to converge")
    hist_g = np.bincount(lab_g, minlength=d)
    hist_h = np.bincount(lab_h, minlength=d)
    return EQUIVALENT if np.array_equal(hist_g, hist_h) else DISTINGUISHED
