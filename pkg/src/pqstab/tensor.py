"""Coloring tensors over tuple spaces and the algebra on them.

Values live on k-tuples (indexed by rank).  A tensor may carry exact
rationals, canonical tuples of colors, or linear forms in formal parameters;
everything in this module is exact — no floating point anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

import numpy as np

from .graphs import Graph
from .tuples import KPartition, falling, rank_rows, tuple_rank, tuple_table

_RATIONAL = (int, Fraction)


@dataclass(frozen=True)
class PolynomialTransform:
    """A polynomial with exact rational coefficients, low degree first."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_dict(self) -> dict:
        return {"coefficients": [str(c) for c in self.coeffs]}


def vandermonde_transform(a, b) -> PolynomialTransform:
    """The unique polynomial of degree < d with P(a_i) = b_i, exactly.

    Newton's divided differences, then expansion to monomial coefficients.
    """
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    if len(a) != len(b):
        raise ValueError("point and value sequences must have equal length")
    if not a:
        raise ValueError("need at least one interpolation point")
    if len(set(a)) != len(a):
        raise ValueError("level transform undefined: duplicate interpolation points")
    dd = list(b)
    for lvl in range(1, len(a)):
        for i in range(len(a) - 1, lvl - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (a[i] - a[i - lvl])
    coeffs = [Fraction(0)] * len(a)
    basis = [Fraction(1)]  # product of (t - a_j) for j < i
    for i, c in enumerate(dd):
        for j, bc in enumerate(basis):
            coeffs[j] += c * bc
        if i + 1 < len(a):
            # basis *= (t - a_i)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for j, bc in enumerate(basis):
                nxt[j] -= bc * a[i]
                nxt[j + 1] += bc
            basis = nxt
    return PolynomialTransform(tuple(coeffs))


@dataclass(frozen=True)
class LinearForm:
    """A formal sum over parameters x_0..x_k with exact rational coefficients."""

    coeffs: tuple  # position nu holds the coefficient of x_nu

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def evaluate(self, params) -> Fraction:
        if len(params) != len(self.coeffs):
            raise ValueError("parameter count mismatch")
        return sum((c * Fraction(p) for c, p in zip(self.coeffs, params)), Fraction(0))


class ColorTensor:
    """Exact values attached to every tuple of a k-tuple space."""

    __slots__ = ("n", "k", "values")

    def __init__(self, n: int, k: int, values):
        values = list(values)
        if len(values) != falling(n, k):
            raise ValueError(
                f"value list has length {len(values)}, expected {falling(n, k)}"
            )
        self.n = n
        self.k = k
        self.values = values

    @classmethod
    def from_function(cls, n: int, k: int, fn) -> "ColorTensor":
        table = tuple_table(n, k)
        return cls(n, k, [fn(tuple(int(v) for v in row)) for row in table])

    @classmethod
    def from_partition(cls, L: KPartition, class_values=None) -> "ColorTensor":
        if class_values is None:
            vals = L.labels.tolist()
        else:
            if len(class_values) != L.d:
                raise ValueError(f"need {L.d} class values, got {len(class_values)}")
            vals = [class_values[c] for c in L.labels]
        return cls(L.n, L.k, vals)

    @classmethod
    def indicator(cls, L: KPartition, c: int) -> "ColorTensor":
        if not 0 <= c < L.d:
            raise ValueError(f"class id {c} out of range (d={L.d})")
        return cls(L.n, L.k, (L.labels == c).astype(np.int64).tolist())

    @classmethod
    def adjacency(cls, graph: Graph) -> "ColorTensor":
        adj = graph.adjacency()
        table = tuple_table(graph.n, 2)
        return cls(graph.n, 2, adj[table[:, 0], table[:, 1]].astype(np.int64).tolist())

    def __getitem__(self, t):
        return self.values[tuple_rank(tuple(t), self.n)]

    def rational(self) -> bool:
        return all(isinstance(v, _RATIONAL) for v in self.values)

    def induced_partition(self) -> KPartition:
        ids: dict = {}
        labels = np.empty(len(self.values), dtype=np.int64)
        for i, v in enumerate(self.values):
            labels[i] = ids.setdefault(v, len(ids))
        return KPartition(self.n, self.k, labels)

    def constant_on(self, L: KPartition):
        """(verdict, witness) — witness names a class and two differing tuples."""
        if (L.n, L.k) != (self.n, self.k):
            raise ValueError("partition and tensor shapes differ")
        seen: dict = {}
        table = tuple_table(self.n, self.k)
        for i, (c, v) in enumerate(zip(L.labels.tolist(), self.values)):
            if c in seen:
                j, w = seen[c]
                if w != v:
                    return False, {
                        "class": c,
                        "tuples": [
                            [int(x) for x in table[j]],
                            [int(x) for x in table[i]],
                        ],
                        "values": [repr(w), repr(v)],
                    }
            else:
                seen[c] = (i, v)
        return True, None


def level_equivalent(s: ColorTensor, t: ColorTensor) -> bool:
    """True iff the two tensors induce the same partition (same level sets)."""
    if (s.n, s.k) != (t.n, t.k):
        raise ValueError("tensors live on different tuple spaces")
    return s.induced_partition() == t.induced_partition()


def _drop_value_columns(sigma: ColorTensor) -> list:
    """Per drop position, the sigma value of every (k+1)-tuple's projection."""
    n, k = sigma.n, sigma.k
    table = tuple_table(n, k + 1)
    cols = []
    for j in range(k + 1):
        ranks = rank_rows(np.delete(table, j, axis=1), n)
        cols.append([sigma.values[r] for r in ranks.tolist()])
    return cols


def product_assemble(sigma: ColorTensor, L: KPartition) -> ColorTensor:
    """Combine the k+1 drop-projection colors of each (k+1)-tuple.

    The color is the slot-indexed tuple of factor colors — a canonical form
    of the multiset of (slot, color) pairs.  Keeping the slot tag matters:
    collapsing to a bare multiset of colors would merge classes that the
    signature lift keeps apart.  Requires sigma to be constant on L.
    """
    ok, witness = sigma.constant_on(L)
    if not ok:
        raise ValueError(f"tensor is not constant on partition classes: {witness}")
    cols = _drop_value_columns(sigma)
    values = [tuple(col[i] for col in cols) for i in range(len(cols[0]))]
    return ColorTensor(sigma.n, sigma.k + 1, values)


def linear_assemble(sigma: ColorTensor) -> ColorTensor:
    """Lift a rational tensor to linear forms in parameters x_0..x_k.

    The coefficient of x_0 is the color of the projection dropping the last
    coordinate; the coefficient of x_m (m >= 1) is the color of the
    projection dropping coordinate m.
    """
    if not sigma.rational():
        raise ValueError("linear assembly needs rational tensor values")
    cols = _drop_value_columns(sigma)
    k = sigma.k
    values = []
    for i in range(len(cols[0])):
        coeffs = [cols[k][i]] + [cols[m][i] for m in range(k)]
        values.append(LinearForm(tuple(coeffs)))
    return ColorTensor(sigma.n, sigma.k + 1, values)


def projective_convolution(tensors) -> ColorTensor:
    """Convolve k rank-k tensors over a shared extension coordinate.

    The value at a tuple is the sum over vertices l outside the tuple of the
    product over j of tensor_j evaluated at (j-th drop projection extended
    by l).  For k = 2 this is the matrix product with diagonal terms
    excluded.
    """
    tensors = list(tensors)
    if not tensors:
        raise ValueError("need at least one tensor")
    n, k = tensors[0].n, tensors[0].k
    if len(tensors) != k:
        raise ValueError(f"need exactly k={k} tensors, got {len(tensors)}")
    for t in tensors:
        if (t.n, t.k) != (n, k):
            raise ValueError("all tensors must share one tuple space")
        if not t.rational():
            raise ValueError("projective convolution needs rational values")
    table = tuple_table(n, k)
    nk = table.shape[0]
    # factor_vals[j][l] = tensor_j at (drop_j extended by l), per base tuple
    factor_vals = []
    for j in range(k):
        dropped = np.delete(table, j, axis=1)
        per_l = {}
        ext = np.empty((nk, k), dtype=np.int64)
        for l in range(n):
            ext[:, :-1] = dropped
            ext[:, -1] = l
            valid = ~(table == l).any(axis=1)
            ranks = np.where(valid, rank_rows(np.where(valid[:, None], ext, 0), n), 0)
            per_l[l] = (valid, ranks)
        factor_vals.append(per_l)
    out = [0] * nk
    for l in range(n):
        valids = [factor_vals[j][l] for j in range(k)]
        base_valid = valids[0][0]
        idx = np.flatnonzero(base_valid)
        for i in idx.tolist():
            term = tensors[0].values[valids[0][1][i]]
            for j in range(1, k):
                if term == 0:
                    break
                term = term * tensors[j].values[valids[j][1][i]]
            out[i] = out[i] + term
    return ColorTensor(n, k, out)


def check_class_function(tau: ColorTensor, L: KPartition, sigma: ColorTensor | None = None):
    """Is tau constant on L's classes?

    Returns (verdict, transform, witness).  When tau is constant, sigma is
    given, sigma is itself constant on L with pairwise distinct rational
    class values, the interpolating polynomial with tau = P(sigma) is
    returned as well.
    """
    ok, witness = tau.constant_on(L)
    if not ok:
        return False, None, witness
    transform = None
    if sigma is not None:
        s_ok, _ = sigma.constant_on(L)
        if s_ok and sigma.rational() and tau.rational():
            reps = [np.flatnonzero(L.labels == c)[0] for c in range(L.d)]
            a = [sigma.values[int(r)] for r in reps]
            if len(set(a)) == len(a):
                b = [tau.values[int(r)] for r in reps]
                transform = vandermonde_transform(a, b)
    return True, transform, witness


@dataclass
class IntersectionResult:
    ok: bool
    arity: int
    num_classes: int
    table: dict | None  # (class combo) -> tuple of structure constants
    witness: dict | None

    def to_dict(self) -> dict:
        doc = {"ok": self.ok, "arity": self.arity, "num_classes": self.num_classes}
        if self.table is not None:
            doc["table"] = {
                ",".join(map(str, combo)): [str(v) for v in row]
                for combo, row in sorted(self.table.items())
            }
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc

    def to_csv(self) -> str:
        if self.table is None:
            raise ValueError("no table to serialize (check failed)")
        header = ",".join(f"i_{j + 1}" for j in range(self.arity)) + ",class,coefficient"
        lines = [header]
        for combo, row in sorted(self.table.items()):
            for cls, coef in enumerate(row):
                lines.append(",".join(map(str, combo)) + f",{cls},{coef}")
        return "\n".join(lines) + "\n"


_INTERSECTION_CAP = 512


def intersection_numbers(L: KPartition) -> IntersectionResult:
    """Structure constants of convolved class indicators, if they exist.

    For every k-fold combination of classes, convolve the indicator tensors
    and demand the result be constant on every class of L; the table of
    those constants generalizes association-scheme intersection numbers.
    """
    if L.d ** L.k > _INTERSECTION_CAP:
        raise ValueError(
            f"intersection table would have {L.d ** L.k} cells (cap {_INTERSECTION_CAP})"
        )
    indicators = [ColorTensor.indicator(L, c) for c in range(L.d)]
    table = {}
    reps = [int(np.flatnonzero(L.labels == c)[0]) for c in range(L.d)]
    for combo in iter_product(range(L.d), repeat=L.k):
        conv = projective_convolution([indicators[c] for c in combo])
        ok, witness = conv.constant_on(L)
        if not ok:
            witness["combo"] = list(combo)
            return IntersectionResult(False, L.k, L.d, None, witness)
        table[combo] = tuple(conv.values[r] for r in reps)
    return IntersectionResult(True, L.k, L.d, table, None)


@dataclass
class SrgResult:
    n: int
    degree: int
    lam: int | None  # common neighbors over edges; None when no edges
    mu: int | None  # common neighbors over non-edges; None when none exist
    holds: bool
    transform_verified: bool

    def parameters(self):
        return (self.n, self.degree, self.lam, self.mu)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "lambda": self.lam,
            "mu": self.mu,
            "holds": self.holds,
            "transform_verified": self.transform_verified,
        }


def srg_parameters(graph: Graph) -> SrgResult:
    """Extract (n, m, lambda, mu) and verify the defining identity exactly.

    The graph must be regular and undirected.  Also re-derives the affine
    recoloring taking adjacency values (1, 0) to (lambda, mu) and checks it
    against the convolution of the adjacency tensor with itself.
    """
    if graph.directed:
        raise ValueError("strongly regular parameters need an undirected graph")
    adj = graph.adjacency().astype(np.int64)
    degrees = adj.sum(axis=1)
    if graph.n > 1 and not (degrees == degrees[0]).all():
        raise ValueError("graph is not regular")
    degree = int(degrees[0]) if graph.n > 1 else 0
    common = adj @ adj
    lam_vals = set()
    mu_vals = set()
    for u in range(graph.n):
        for v in range(graph.n):
            if u == v:
                continue
            (lam_vals if adj[u, v] else mu_vals).add(int(common[u, v]))
    lam = lam_vals.pop() if len(lam_vals) == 1 else None
    mu = mu_vals.pop() if len(mu_vals) == 1 else None
    holds = (not lam_vals or lam is not None) and (not mu_vals or mu is not None)
    lam_present = lam is not None
    mu_present = mu is not None

    transform_verified = False
    if holds and graph.n >= 2:
        conv = projective_convolution([ColorTensor.adjacency(graph)] * 2)
        target = vandermonde_transform(
            (1, 0),
            (lam if lam_present else 0, mu if mu_present else 0),
        )
        table = tuple_table(graph.n, 2)
        expected = [target(int(adj[u, v])) for u, v in table]
        actual = [Fraction(v) for v in conv.values]
        checked = [
            (e, a)
            for (u, v), e, a in zip(table, expected, actual)
            if (adj[u, v] and lam_present) or (not adj[u, v] and mu_present)
        ]
        transform_verified = all(e == a for e, a in checked)

    return SrgResult(
        n=graph.n,
        degree=degree,
        lam=lam if lam_present else None,
        mu=mu if mu_present else None,
        holds=holds,
        transform_verified=transform_verified,
    )
