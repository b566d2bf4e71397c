"""Operators on tuple partitions: projection, assembly, multiprojection,
and the fullness closure.

Positions inside tuples are 1-based in every public signature here (a
*subspace* is a strictly increasing tuple of positions), matching the usual
matrix-column reading of a relation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernel
from .tuples import MAX_ARITY, KPartition, falling, rank_rows, tuple_table

MODES = ("set", "count")


def _check_subspace(W, k: int) -> tuple[int, ...]:
    W = tuple(int(p) for p in W)
    if not W:
        raise ValueError("subspace must be nonempty")
    if any(W[i] >= W[i + 1] for i in range(len(W) - 1)):
        raise ValueError(f"subspace positions must be strictly increasing: {W}")
    if W[0] < 1 or W[-1] > k:
        raise ValueError(f"subspace {W} invalid for arity {k}")
    return W


def project_tuple(t, W) -> tuple:
    """Coordinates of t at the (1-based) positions in W, in natural order."""
    t = tuple(t)
    W = _check_subspace(W, len(t))
    return tuple(t[p - 1] for p in W)


def drop_projections(t) -> list[tuple]:
    """The k projections of a k-tuple that omit one coordinate each.

    Entry j (0-based j+1) omits coordinate j+1.
    """
    t = tuple(t)
    if len(t) < 2:
        raise ValueError("drop projections need arity >= 2")
    return [t[:j] + t[j + 1 :] for j in range(len(t))]


def assemble(L: KPartition) -> KPartition:
    """Lift a k-partition to a (k+1)-partition.

    The class of a (k+1)-tuple is the ordered signature of the L-classes of
    its k+1 drop projections.
    """
    n, k = L.n, L.k
    if k + 1 > n:
        raise ValueError(f"no (k+1)-tuples exist: k+1={k + 1} exceeds n={n}")
    if k + 1 > MAX_ARITY:
        raise ValueError(f"tuple arity capped at {MAX_ARITY}")
    table = tuple_table(n, k + 1)
    sig = np.empty((table.shape[0], k + 1), dtype=np.int64)
    for j in range(k + 1):
        sig[:, j] = L.labels[rank_rows(np.delete(table, j, axis=1), n)]
    return KPartition.from_key_matrix(n, k + 1, sig)


def _membership_entries(L: KPartition):
    """(owners, keys) for every (member tuple, dropped position) pair.

    The owner is the rank of the drop projection at that position; the key
    encodes (class id, position) as ``class * k + (position - 1)``.
    """
    n, k = L.n, L.k
    table = tuple_table(n, k)
    nk = table.shape[0]
    owners = np.empty(nk * k, dtype=np.int64)
    keys = np.empty(nk * k, dtype=np.int64)
    for j in range(k):
        owners[j * nk : (j + 1) * nk] = rank_rows(np.delete(table, j, axis=1), n)
        keys[j * nk : (j + 1) * nk] = L.labels * k + j
    return owners, keys


def _signature_matrix(L: KPartition, mode: str) -> np.ndarray:
    """Per-owner membership signatures as rows, owner-rank order.

    Every (k-1)-tuple collects exactly k·(n-k+1) (class, position) entries;
    sorting the entries of each block yields the count-mode signature, and
    collapsing duplicates to a sentinel yields the set-mode one.
    """
    n, k = L.n, L.k
    owners, keys = _membership_entries(L)
    block = k * (n - k + 1)
    order = np.lexsort((keys, owners))
    mat = keys[order].reshape(falling(n, k - 1), block)
    if mode == "count":
        return mat
    mat = mat.copy()
    sentinel = L.d * k
    dup = mat[:, 1:] == mat[:, :-1]
    mat[:, 1:][dup] = sentinel
    mat.sort(axis=1)
    return mat


def project_partition(L: KPartition, mode: str = "count") -> KPartition:
    """Drop a k-partition to a (k-1)-partition by membership signatures.

    Two (k-1)-tuples share a class iff they occur as drop projections of
    member tuples in the same way: as a set of (class, position) pairs in
    ``set`` mode, or with multiplicities in ``count`` mode.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if L.k < 2:
        raise ValueError("cannot project a 1-partition")
    return KPartition.from_key_matrix(L.n, L.k - 1, _signature_matrix(L, mode))


@dataclass(frozen=True)
class MultiProjection:
    """Row multiset of a column-restricted relation."""

    arity: int
    rows: dict  # projected tuple -> multiplicity

    @property
    def total(self) -> int:
        return sum(self.rows.values())

    @property
    def homogeneous(self) -> bool:
        return len(set(self.rows.values())) <= 1

    def to_dict(self) -> dict:
        return {
            "arity": self.arity,
            "rows": [[list(t), m] for t, m in sorted(self.rows.items())],
        }


def multiproject(U, W) -> MultiProjection:
    """Restrict a relation to the columns in W, keeping row multiplicities."""
    members = [tuple(t) for t in U]
    if not members:
        raise ValueError("cannot multiproject an empty relation")
    k = len(members[0])
    W = _check_subspace(W, k)
    if len(W) >= k:
        raise ValueError(f"subspace {W} must be proper for arity {k}")
    counts = Counter(tuple(t[p - 1] for p in W) for t in members)
    return MultiProjection(arity=len(W), rows=dict(counts))


def full_closure(U, l: int, n: int) -> list[tuple]:
    """All k-tuples whose every l-projection occurs as an l-projection of U.

    U is a nonempty k-relation over n vertices; returns the closure in
    lexicographic order (always a superset of U).
    """
    members = np.asarray([tuple(t) for t in U], dtype=np.int64)
    if members.size == 0:
        raise ValueError("cannot close an empty relation")
    k = members.shape[1]
    if not 1 <= l < k:
        raise ValueError(f"need 1 <= l < k, got l={l}, k={k}")
    table = tuple_table(n, k)
    mask = np.ones(table.shape[0], dtype=bool)
    for W in combinations(range(k), l):
        idx = list(W)
        seen = np.unique(rank_rows(members[:, idx], n))
        mask &= np.isin(rank_rows(table[:, idx], n), seen)
    return [tuple(int(v) for v in row) for row in table[mask]]


def _l_full_witness(L: KPartition, l: int):
    """None if every class is l-full, else (class id, first closure tuple
    outside the class)."""
    if not 1 <= l < L.k:
        raise ValueError(f"need 1 <= l < k, got l={l}, k={L.k}")
    for c in range(L.d):
        members = L.members(c)
        closure = full_closure(members, l, L.n)
        if len(closure) != len(members):
            have = {tuple(int(v) for v in row) for row in members}
            extra = next(t for t in closure if t not in have)
            return c, extra
    return None


def is_l_full(L: KPartition, l: int) -> bool:
    """True iff the fullness closure fixes every class of L."""
    return _l_full_witness(L, l) is None
