"""Tuple spaces and canonical partitions of them.

A *k-tuple space* over n vertices is the set of ordered k-tuples with
pairwise-distinct coordinates drawn from 0..n-1 (the diagonal is excluded
throughout).  Tuples are ordered lexicographically and addressed by their
rank in that order; a :class:`KPartition` stores one dense class id per rank.

Canonical form: class ids are assigned in ascending order of each class's
lexicographically smallest member, so two partitions are equal iff their
label arrays are equal.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

import numpy as np

from . import kernel

MAX_ARITY = 8

# hard cap on materialized tuple tables (entries, not bytes)
_TABLE_LIMIT = 60_000_000


def falling(n: int, k: int) -> int:
    """n·(n-1)···(n-k+1), the number of k-tuples with distinct coordinates."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _check_space(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one vertex, got n={n}")
    if k < 1:
        raise ValueError(f"tuple arity must be positive, got k={k}")
    if k > MAX_ARITY:
        raise ValueError(f"tuple arity capped at {MAX_ARITY}, got k={k}")
    if k > n:
        raise ValueError(f"empty tuple space: k={k} exceeds n={n}")


@lru_cache(maxsize=64)
def _tuple_table_cached(n: int, k: int) -> np.ndarray:
    size = falling(n, k)
    if size * k > _TABLE_LIMIT:
        raise ValueError(f"tuple space too large to materialize: n={n}, k={k}")
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(n), k)),
        dtype=np.int64,
        count=size * k,
    )
    table = flat.reshape(size, k)
    table.setflags(write=False)
    return table


def tuple_table(n: int, k: int) -> np.ndarray:
    """The full tuple space as a read-only (N, k) array in lexicographic order."""
    _check_space(n, k)
    return _tuple_table_cached(n, k)


def space_size(n: int, k: int) -> int:
    _check_space(n, k)
    return falling(n, k)


def enumerate_tuples(n: int, k: int):
    """Yield all k-tuples with distinct coordinates in lexicographic order.

    Lazy on purpose: for higher arities the space is huge and callers that
    only need to scan it should not pay for a dense table.
    """
    _check_space(n, k)
    return itertools.permutations(range(n), k)


@lru_cache(maxsize=64)
def _rank_bases(n: int, k: int) -> tuple[int, ...]:
    # completions remaining after fixing the first i coordinates
    return tuple(falling(n - 1 - i, k - 1 - i) for i in range(k))


def rank_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Vectorized lexicographic rank of distinct-coordinate tuples.

    ``rows`` is an (N, k) int array; coordinates are assumed valid.
    """
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim == 1:
        rows = rows[None, :]
    k = rows.shape[1]
    bases = _rank_bases(n, k)
    rank = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(k):
        c = rows[:, i].copy()
        for j in range(i):
            c -= rows[:, j] < rows[:, i]
        rank += c * bases[i]
    return rank


def tuple_rank(t, n: int) -> int:
    """Rank of a single tuple in the lexicographic order of its space."""
    _validate_tuple(t, n)
    return int(rank_rows(np.asarray(t, dtype=np.int64)[None, :], n)[0])


def _validate_tuple(t, n: int) -> None:
    k = len(t)
    _check_space(n, k)
    if len(set(t)) != k:
        raise ValueError(f"coordinates must be pairwise distinct: {tuple(t)}")
    for v in t:
        if not 0 <= v < n:
            raise ValueError(f"coordinate {v} out of range for n={n}")


class KPartition:
    """A canonical partition of the k-tuple space over n vertices."""

    __slots__ = ("n", "k", "labels", "d")

    def __init__(self, n: int, k: int, labels, _canonical: bool = False):
        _check_space(n, k)
        labels = np.ascontiguousarray(labels, dtype=np.int64)
        size = falling(n, k)
        if labels.shape != (size,):
            raise ValueError(
                f"label array has shape {labels.shape}, expected ({size},) for n={n}, k={k}"
            )
        if _canonical:
            d = int(labels.max()) + 1 if size else 0
        else:
            labels, d = kernel.relabel_first_occurrence(labels)
        labels.setflags(write=False)
        self.n = n
        self.k = k
        self.labels = labels
        self.d = d

    # -- constructors ----------------------------------------------------

    @classmethod
    def single_class(cls, n: int, k: int) -> "KPartition":
        return cls(n, k, np.zeros(space_size(n, k), dtype=np.int64), _canonical=True)

    @classmethod
    def discrete(cls, n: int, k: int) -> "KPartition":
        return cls(n, k, np.arange(space_size(n, k), dtype=np.int64), _canonical=True)

    @classmethod
    def from_key_matrix(cls, n: int, k: int, keys: np.ndarray) -> "KPartition":
        """Group tuples by equal rows of an (N, m) key matrix."""
        labels, d = kernel.group_rows(keys)
        p = cls.__new__(cls)
        labels.setflags(write=False)
        p.n, p.k, p.labels, p.d = n, k, labels, d
        return p

    # -- basic queries ----------------------------------------------------

    @property
    def size(self) -> int:
        return self.labels.shape[0]

    def class_of(self, t) -> int:
        _validate_tuple(t, self.n)
        if len(t) != self.k:
            raise ValueError(f"tuple arity {len(t)} does not match partition arity {self.k}")
        return int(self.labels[tuple_rank(t, self.n)])

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.d)

    def members(self, c: int) -> np.ndarray:
        if not 0 <= c < self.d:
            raise ValueError(f"class id {c} out of range (d={self.d})")
        return tuple_table(self.n, self.k)[self.labels == c]

    def classes(self) -> list[list[tuple]]:
        table = tuple_table(self.n, self.k)
        out: list[list[tuple]] = [[] for _ in range(self.d)]
        for row, lab in zip(table, self.labels):
            out[lab].append(tuple(int(v) for v in row))
        return out

    def transversal(self) -> list[tuple]:
        """Lexicographically smallest member of each class, in class-id order."""
        table = tuple_table(self.n, self.k)
        first = np.full(self.d, -1, dtype=np.int64)
        for idx in range(self.size - 1, -1, -1):
            first[self.labels[idx]] = idx
        return [tuple(int(v) for v in table[i]) for i in first]

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, KPartition):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.d == other.d
            and np.array_equal(self.labels, other.labels)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.labels.tobytes()))

    def __repr__(self) -> str:
        return f"KPartition(n={self.n}, k={self.k}, classes={self.d})"

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "classes": self.classes()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> "KPartition":
        n, k = doc["n"], doc["k"]
        size = space_size(n, k)
        labels = np.full(size, -1, dtype=np.int64)
        for cid, members in enumerate(doc["classes"]):
            if not members:
                raise ValueError(f"class {cid} is empty")
            for t in members:
                _validate_tuple(t, n)
                if len(t) != k:
                    raise ValueError(f"tuple {t} has arity {len(t)}, expected {k}")
                r = tuple_rank(tuple(t), n)
                if labels[r] != -1:
                    raise ValueError(f"tuple {tuple(t)} appears in two classes")
                labels[r] = cid
        if (labels < 0).any():
            missing = tuple_table(n, k)[int(np.argmax(labels < 0))]
            raise ValueError(f"tuple {tuple(int(v) for v in missing)} is not covered")
        return cls(n, k, labels)

    @classmethod
    def from_json(cls, text: str) -> "KPartition":
        return cls.from_dict(json.loads(text))


def partition_from_labels(n: int, k: int, label) -> KPartition:
    """Group tuples that share a label value.

    ``label`` is either a mapping from tuples to opaque hashable values or a
    callable applied to each tuple.  A missing label is an error.
    """
    _check_space(n, k)
    if callable(label):
        get = label
    else:
        def get(t, _m=label):
            try:
                return _m[t]
            except KeyError:
                raise ValueError(f"missing label for tuple {t}") from None
    ids: dict = {}
    out = np.empty(space_size(n, k), dtype=np.int64)
    for i, t in enumerate(enumerate_tuples(n, k)):
        v = get(t)
        out[i] = ids.setdefault(v, len(ids))
    return KPartition(n, k, out)


def _check_compatible(p: KPartition, q: KPartition) -> None:
    if p.k != q.k:
        raise ValueError(f"arity mismatch: {p.k} vs {q.k}")
    if p.n != q.n:
        raise ValueError(f"vertex count mismatch: {p.n} vs {q.n}")


def refines(p: KPartition, q: KPartition) -> bool:
    """True iff every class of p is contained in a single class of q."""
    _check_compatible(p, q)
    pairs = p.labels * q.d + q.labels
    return np.unique(pairs).size == p.d


def meet(p: KPartition, q: KPartition) -> KPartition:
    """Common refinement: classes are the nonempty pairwise intersections."""
    _check_compatible(p, q)
    keys = np.stack([p.labels, q.labels], axis=1)
    return KPartition.from_key_matrix(p.n, p.k, keys)


class UnionFind:
    """Plain union-find with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.weight = [1] * n

    def find(self, i: int) -> int:
        path = []
        root = i
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        for node in path:
            self.parent[node] = root
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return
        if self.weight[ri] < self.weight[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        self.weight[ri] += self.weight[rj]


def join(p: KPartition, q: KPartition) -> KPartition:
    """Finest common coarsening (transitive closure of class overlap)."""
    _check_compatible(p, q)
    uf = UnionFind(p.d + q.d)
    pairs = np.unique(p.labels * q.d + q.labels)
    for pair in pairs:
        uf.union(int(pair) // q.d, p.d + int(pair) % q.d)
    roots = np.fromiter((uf.find(c) for c in range(p.d)), dtype=np.int64, count=p.d)
    return KPartition(p.n, p.k, roots[p.labels])
