"""Brute-force automorphism ground truth.

Two engines: exhaustive scan over all n! permutations (small n), and a
backtracking search that prunes on class-consistent partial images.  Both
return the complete element list; the rest of the package treats their
output as the reference answer.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .stabilize import initial_partition
from .ops import project_partition
from .tuples import KPartition, UnionFind, rank_rows, tuple_table

EXHAUSTIVE_LIMIT = 10
BACKTRACK_LIMIT = 20
MAX_GROUP_ELEMENTS = 1_000_000


@dataclass(frozen=True)
class AutGroup:
    """A permutation group given by its full element list."""

    n: int
    elements: np.ndarray  # (order, n) image tables, identity first

    def __post_init__(self):
        object.__setattr__(self, "elements", np.ascontiguousarray(self.elements, dtype=np.int64))
        self.elements.setflags(write=False)

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, perm) -> bool:
        arr = np.asarray(perm, dtype=np.int64)
        return bool((self.elements == arr).all(axis=1).any())

    def element_set(self) -> set:
        return {tuple(int(v) for v in row) for row in self.elements}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "order": self.order,
            "elements": [[int(v) for v in row] for row in self.elements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _sorted_elements(found: list) -> np.ndarray:
    arr = np.asarray(sorted(found), dtype=np.int64)
    return arr


def _exhaustive(L: KPartition) -> AutGroup:
    n, k = L.n, L.k
    table = tuple_table(n, k)
    nk = table.shape[0]
    chunk = max(1, 4_000_000 // max(1, nk * k))
    found = []
    perms = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(perms, chunk))
        if not block:
            break
        arr = np.asarray(block, dtype=np.int64)
        imgs = arr[:, table]  # (c, nk, k)
        ranks = rank_rows(imgs.reshape(-1, k), n).reshape(len(block), nk)
        ok = (L.labels[ranks] == L.labels).all(axis=1)
        found.extend(map(tuple, arr[ok].tolist()))
    return AutGroup(n=n, elements=_sorted_elements(found))


def _projection_chain(L: KPartition) -> list:
    chain = [L]
    while chain[-1].k > 1:
        chain.append(project_partition(chain[-1], "count"))
    return chain


def _backtracking(L: KPartition, max_elements: int) -> AutGroup:
    n = L.n
    chain = _projection_chain(L)
    # rows to re-check once vertex m gets an image: all coords <= m, max == m
    checks = []  # per partition: list over m of (row indices, coord rows)
    for part in chain:
        table = tuple_table(n, part.k)
        maxes = table.max(axis=1)
        per_m = []
        for m in range(n):
            idx = np.flatnonzero(maxes == m)
            per_m.append((idx, table[idx]))
        checks.append(per_m)
    vertex_class = chain[-1].labels  # arity-1 classes constrain candidate images

    img = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    found: list = []

    def consistent(m: int) -> bool:
        for part, per_m in zip(chain, checks):
            idx, rows = per_m[m]
            if idx.size == 0:
                continue
            ranks = rank_rows(img[rows], n)
            if not (part.labels[ranks] == part.labels[idx]).all():
                return False
        return True

    def descend(m: int) -> None:
        if m == n:
            found.append(tuple(int(v) for v in img))
            if len(found) > max_elements:
                raise ValueError(
                    f"automorphism group exceeds {max_elements} elements; "
                    "enumeration aborted"
                )
            return
        for w in range(n):
            if used[w] or vertex_class[w] != vertex_class[m]:
                continue
            img[m] = w
            used[w] = True
            if consistent(m):
                descend(m + 1)
            used[w] = False
        img[m] = -1

    descend(0)
    return AutGroup(n=n, elements=_sorted_elements(found))


def automorphisms(L: KPartition, method: str = "auto", limit: int | None = None,
                  max_elements: int = MAX_GROUP_ELEMENTS) -> AutGroup:
    """All permutations of the vertex set preserving every class of L."""
    n = L.n
    if method == "auto":
        method = "exhaustive" if n <= 8 else "backtracking"
    if method == "exhaustive":
        cap = EXHAUSTIVE_LIMIT if limit is None else min(limit, EXHAUSTIVE_LIMIT)
        if n > cap:
            raise ValueError(
                f"exhaustive automorphism search is limited to n <= {cap} (got n={n})"
            )
        return _exhaustive(L)
    if method == "backtracking":
        cap = BACKTRACK_LIMIT if limit is None else limit
        if n > cap:
            raise ValueError(
                f"backtracking automorphism search is limited to n <= {cap} (got n={n})"
            )
        return _backtracking(L, max_elements)
    raise ValueError(f"unknown method {method!r} (use 'auto', 'exhaustive' or 'backtracking')")


def graph_automorphisms(graph: Graph, **kwargs) -> AutGroup:
    if graph.n == 1:
        return AutGroup(n=1, elements=np.zeros((1, 1), dtype=np.int64))
    return automorphisms(initial_partition(graph, 2), **kwargs)


def orbit_partition(group: AutGroup, n: int, k: int) -> KPartition:
    """Orbits of the componentwise action on the k-tuple space."""
    if group.n != n:
        raise ValueError(f"group acts on {group.n} points, not {n}")
    table = tuple_table(n, k)
    nk = table.shape[0]
    uf = UnionFind(nk)
    for perm in group.elements:
        ranks = rank_rows(perm[table], n)
        for r, s in enumerate(ranks):
            uf.union(r, int(s))
    labels = np.fromiter((uf.find(r) for r in range(nk)), dtype=np.int64, count=nk)
    return KPartition(n, k, labels)


def is_automorphic(L: KPartition, **kwargs) -> bool:
    """True iff L equals the orbit partition of its own automorphism group."""
    group = automorphisms(L, **kwargs)
    return orbit_partition(group, L.n, L.k) == L


def assembly_stays_automorphic(L: KPartition, i: int = 1, **kwargs) -> bool:
    """Assemble an automorphic partition i times and re-check automorphicity."""
    from .ops import assemble

    if i < 1:
        raise ValueError("need i >= 1")
    lifted = L
    for _ in range(i):
        lifted = assemble(lifted)
    return is_automorphic(lifted, **kwargs)


def is_k_closed(group: AutGroup, n: int, k: int) -> bool:
    """True iff the group equals the automorphism group of its own k-orbits."""
    if n > 6:
        raise ValueError(f"k-closure check is limited to n <= 6 (got n={n})")
    orbits = orbit_partition(group, n, k)
    closure = automorphisms(orbits, method="exhaustive")
    return closure.element_set() == group.element_set()


def vertex_orbits(group: AutGroup) -> list:
    uf = UnionFind(group.n)
    for perm in group.elements:
        for v in range(group.n):
            uf.union(v, int(perm[v]))
    roots = {}
    out = []
    for v in range(group.n):
        r = uf.find(v)
        if r not in roots:
            roots[r] = len(out)
            out.append([])
        out[roots[r]].append(v)
    return out


def vertex_transitive(graph: Graph, **kwargs) -> bool:
    """True iff the automorphism group has a single vertex orbit."""
    if graph.n == 1:
        return True
    group = graph_automorphisms(graph, **kwargs)
    return len(vertex_orbits(group)) == 1
