"""The pair-sum linear system read off a 3-partition, with exact rank.

One unknown per ordered vertex pair.  Every pair of same-class triples
(t, t') contributes the equation

    sum over l outside t of x[t_0, l]  ==  sum over l outside t' of x[t'_0, l]

with transitively implied equalities dropped (a chain through each class in
canonical member order).  All arithmetic is exact integer/rational; the rank
comes from fraction-free sparse elimination, never from floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .tuples import KPartition, tuple_table, rank_rows

# class-constant solution search is skipped above this many pair classes
_REDUCED_CAP = 80


def _normalized(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def sparse_rank(rows, num_vars: int | None = None, keep_pivots: bool = False):
    """Exact rank of sparse integer rows (dicts of column -> coefficient).

    Incremental elimination: each row is reduced against the pivot basis and
    becomes a new pivot if anything survives.  Returns the rank, or
    ``(rank, pivots)`` when ``keep_pivots`` is set.
    """
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            nxt = {col: val * a for col, val in r.items()}
            for col, val in p.items():
                nv = nxt.get(col, 0) - val * b
                if nv:
                    nxt[col] = nv
                else:
                    nxt.pop(col, None)
            r = _normalized(nxt)
        if r:
            pivots[min(r)] = _normalized(r)
            rank += 1
            if num_vars is not None and rank == num_vars:
                break
    return (rank, pivots) if keep_pivots else rank


def nullspace_basis(rows, num_vars: int):
    """Exact rational basis of the solution space of a homogeneous system.

    Returns a list of basis vectors (each a list of Fractions, one per
    variable), one per free variable.
    """
    _, pivots = sparse_rank(rows, num_vars=num_vars, keep_pivots=True)
    free = [c for c in range(num_vars) if c not in pivots]
    basis = []
    pivot_cols = sorted(pivots, reverse=True)
    for f in free:
        vec = [Fraction(0)] * num_vars
        vec[f] = Fraction(1)
        for c in pivot_cols:
            row = pivots[c]
            acc = Fraction(0)
            for col, val in row.items():
                if col != c:
                    acc += val * vec[col]
            vec[c] = -acc / row[c]
        basis.append(vec)
    return basis


@dataclass
class PairSumSystem:
    """The system over n(n-1) ordered-pair unknowns, plus exact analysis."""

    n: int
    equation_pairs: list  # list of (triple, triple) tuples, same class
    source: str  # "all" or "orbit-reduced"
    _rank: int | None = field(default=None, repr=False)

    @property
    def num_variables(self) -> int:
        return self.n * (self.n - 1)

    @property
    def num_equations(self) -> int:
        return len(self.equation_pairs)

    @property
    def variables(self) -> list:
        return [f"x_{u}_{v}" for u, v in tuple_table(self.n, 2)]

    def _pair_index(self, u: int, v: int) -> int:
        # rank of (u, v) in the lexicographic order of ordered pairs
        return u * (self.n - 1) + (v - 1 if v > u else v)

    def equation_row(self, idx: int) -> dict:
        """Sparse coefficient row of one equation over the pair unknowns."""
        t, s = self.equation_pairs[idx]
        row: dict = {}
        for l in range(self.n):
            if l not in t:
                c = self._pair_index(t[0], l)
                row[c] = row.get(c, 0) + 1
            if l not in s:
                c = self._pair_index(s[0], l)
                row[c] = row.get(c, 0) - 1
        return {c: v for c, v in row.items() if v}

    def equation_rows(self) -> list:
        return [self.equation_row(i) for i in range(self.num_equations)]

    def _extended_rows(self):
        """Six-sparse reformulation: auxiliary unknown V+i holds the full row
        sum over pairs (i, *); rank of the extended system exceeds the true
        rank by exactly n."""
        nvars = self.num_variables
        for t, s in self.equation_pairs:
            row: dict = {}
            row[nvars + t[0]] = row.get(nvars + t[0], 0) + 1
            for other in t[1:]:
                c = self._pair_index(t[0], other)
                row[c] = row.get(c, 0) + 1
            row[nvars + s[0]] = row.get(nvars + s[0], 0) - 1
            for other in s[1:]:
                c = self._pair_index(s[0], other)
                row[c] = row.get(c, 0) - 1
            yield {c: v for c, v in row.items() if v}
        for i in range(self.n):
            row = {nvars + i: 1}
            for l in range(self.n):
                if l != i:
                    row[self._pair_index(i, l)] = -1
            yield row

    @property
    def rank(self) -> int:
        if self._rank is None:
            seen = set()
            rows = []
            for row in self._extended_rows():
                key = tuple(sorted(_normalized(row).items()))
                if key not in seen:
                    seen.add(key)
                    rows.append(row)
            ext_rank = sparse_rank(rows, num_vars=self.num_variables + self.n)
            self._rank = ext_rank - self.n
        return self._rank

    @property
    def solution_space_dim(self) -> int:
        return self.num_variables - self.rank

    def is_solution(self, assign) -> bool:
        """Check an assignment (callable on ordered pairs, or a mapping)."""
        if not callable(assign):
            table = assign
            assign = lambda u, v: table[(u, v)]  # noqa: E731
        for t, s in self.equation_pairs:
            lhs = sum(Fraction(assign(t[0], l)) for l in range(self.n) if l not in t)
            rhs = sum(Fraction(assign(s[0], l)) for l in range(self.n) if l not in s)
            if lhs != rhs:
                return False
        return True

    def constants_solve(self) -> bool:
        return self.is_solution(lambda u, v: 1)

    def distinct_class_solution(self, l2: KPartition):
        """Does some solution separate all classes of a pair partition?

        Restricts the system to assignments constant on each class of l2 and
        decides whether the solution space contains a vector with pairwise
        distinct class values.  Returns True/False, or None (with the reason
        in the report) when the class count makes this too costly.
        """
        if l2.n != self.n or l2.k != 2:
            raise ValueError("need a 2-partition over the same vertex set")
        if l2.d > _REDUCED_CAP:
            return None
        seen = set()
        reduced = []
        for i in range(self.num_equations):
            row: dict = {}
            for c, v in self.equation_row(i).items():
                cls = int(l2.labels[c])
                nv = row.get(cls, 0) + v
                if nv:
                    row[cls] = nv
                else:
                    row.pop(cls, None)
            key = tuple(sorted(_normalized(row).items()))
            if key and key not in seen:
                seen.add(key)
                reduced.append(row)
        basis = nullspace_basis(reduced, l2.d)
        rows = {tuple(vec[c] for vec in basis) for c in range(l2.d)}
        return len(rows) == l2.d

    def to_dict(self) -> dict:
        return {
            "variables": self.num_variables,
            "equations": self.num_equations,
            "source": self.source,
            "rank": self.rank,
            "solution_space_dim": self.solution_space_dim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def build_pair_sum_system(L3: KPartition, pair_source: str = "all", aut=None) -> PairSumSystem:
    """Equations from consecutive same-class triples of a 3-partition.

    ``pair_source="all"`` chains every class in canonical member order;
    ``"orbit-reduced"`` first quotients members by the orbits of a supplied
    automorphism group and chains one representative per orbit.
    """
    if L3.k != 3:
        raise ValueError(f"pair-sum system needs a 3-partition, got arity {L3.k}")
    if pair_source not in ("all", "orbit-reduced"):
        raise ValueError(f"pair_source must be 'all' or 'orbit-reduced', got {pair_source!r}")
    table = tuple_table(L3.n, 3)
    if pair_source == "orbit-reduced":
        if aut is None:
            raise ValueError("orbit-reduced source needs an automorphism group")
        from .oracle import orbit_partition

        orbits = orbit_partition(aut, L3.n, 3)
        orbit_labels = orbits.labels
    equation_pairs = []
    for c in range(L3.d):
        idx = np.flatnonzero(L3.labels == c)
        if pair_source == "orbit-reduced":
            seen_orbits = set()
            reps = []
            for i in idx.tolist():
                o = int(orbit_labels[i])
                if o not in seen_orbits:
                    seen_orbits.add(o)
                    reps.append(i)
            idx = reps
        else:
            idx = idx.tolist()
        members = [tuple(int(v) for v in table[i]) for i in idx]
        for t, s in zip(members, members[1:]):
            equation_pairs.append((t, s))
    return PairSumSystem(n=L3.n, equation_pairs=equation_pairs, source=pair_source)
