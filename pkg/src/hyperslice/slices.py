"""Families of partitions in the label model, slices through them, and the
random cluster refinement used to compare slices at two resolutions.

A family assigns every ground-partite ``i``-set of vertices (``2 <= i < k``)
a label in ``1..1/d_i``. The cell of a set is the tuple of the cells of its
``(i-1)``-subsets together with its own label, so cells refine each other by
construction and every polyad supports exactly ``1/d_i`` cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import comb, exp, sqrt
from typing import Iterable, Mapping

import numpy as np

from .core import Complex, GroundPartition, KGraph, canon
from .errors import ForeignSliceError, InvalidQueryError


class DensityVector:
    """``d_2, ..., d_(k-1)``, each the reciprocal of a positive integer."""

    def __init__(self, k: int, d: Mapping[int, Fraction] | None = None):
        d = {int(i): Fraction(v) for i, v in (d or {}).items()}
        for i in range(2, k):
            d.setdefault(i, Fraction(1))
        if set(d) != set(range(2, k)):
            raise InvalidQueryError(f"densities must be indexed by 2..{k - 1}")
        for i, v in d.items():
            if not 0 < v <= 1 or (1 / v).denominator != 1:
                raise InvalidQueryError(f"d_{i} = {v} is not 1/m for a positive integer m")
        self.k = k
        self.d = dict(sorted(d.items()))

    def __getitem__(self, i):
        return self.d[i]

    def cells(self, i: int) -> int:
        return int(1 / self.d[i])

    def __eq__(self, other):
        return isinstance(other, DensityVector) and (self.k, self.d) == (other.k, other.d)

    def __hash__(self):
        return hash((self.k, tuple(self.d.items())))

    def __repr__(self):
        return f"DensityVector({ {i: str(v) for i, v in self.d.items()} })"

    def to_json(self) -> dict:
        return {str(i): str(v) for i, v in self.d.items()}


def partite_sets(P: GroundPartition, i: int, clusters: Iterable[int] | None = None):
    """Vertex ``i``-sets with one vertex in each of ``i`` distinct clusters.

    Ordered by cluster set, then lexicographically within.
    """
    pool = range(P.t) if clusters is None else sorted(clusters)
    for A in combinations(pool, i):
        for Q in product(*(P.parts[a] for a in A)):
            yield canon(Q)


class PartitionFamily:
    def __init__(self, ground: GroundPartition, k: int, densities: DensityVector,
                 labels: Mapping[int, Mapping[tuple, int]]):
        if not ground.equal_size:
            raise InvalidQueryError("clusters must have equal size")
        if densities.k != k:
            raise InvalidQueryError("density vector has the wrong uniformity")
        self.ground = ground
        self.k = k
        self.densities = densities
        self.labels = {}
        for i in range(2, k):
            level = {canon(Q): int(v) for Q, v in labels.get(i, {}).items()}
            top = densities.cells(i)
            expected = set(partite_sets(ground, i))
            if set(level) != expected:
                raise InvalidQueryError(f"labels at level {i} must cover exactly the partite {i}-sets")
            if any(not 1 <= v <= top for v in level.values()):
                raise InvalidQueryError(f"level-{i} labels must lie in 1..{top}")
            self.labels[i] = dict(sorted(level.items()))
        self._cells = {}

    @classmethod
    def trivial(cls, ground: GroundPartition, k: int):
        d = DensityVector(k)
        return cls(ground, k, d, {i: {Q: 1 for Q in partite_sets(ground, i)} for i in range(2, k)})

    @classmethod
    def random(cls, ground: GroundPartition, k: int, densities: DensityVector, seed=0):
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        labels = {}
        for i in range(2, k):
            sets = list(partite_sets(ground, i))
            draws = rng.integers(1, densities.cells(i) + 1, size=len(sets))
            labels[i] = dict(zip(sets, draws.tolist()))
        return cls(ground, k, densities, labels)

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def t(self) -> int:
        return self.ground.t

    def label(self, Q) -> int:
        Q = canon(Q)
        if len(Q) < 2:
            return 1
        return self.labels[len(Q)][Q]

    def cell(self, Q):
        """Cell id: the cluster for a vertex, else (cells of the facets, own label)."""
        Q = canon(Q)
        if len(Q) == 1:
            return self.ground.part_of(Q[0])
        got = self._cells.get(Q)
        if got is None:
            facets = tuple(self.cell(Q[:j] + Q[j + 1:]) for j in range(len(Q)))
            got = (facets, self.labels[len(Q)][Q])
            self._cells[Q] = got
        return got

    def cells_on_polyad(self, i: int) -> dict:
        """Map each level-``i`` polyad (tuple of facet cells) to the labels seen on it."""
        out = {}
        for Q in partite_sets(self.ground, i):
            facets, lab = self.cell(Q)
            out.setdefault(facets, set()).add(lab)
        return out

    def __eq__(self, other):
        if not isinstance(other, PartitionFamily):
            return NotImplemented
        return (self.ground, self.k, self.densities, self.labels) == (
            other.ground, other.k, other.densities, other.labels)

    def __hash__(self):
        return hash((self.ground, self.k, self.densities))

    def __repr__(self):
        return f"PartitionFamily(n={self.n}, t={self.t}, k={self.k}, d={self.densities!r})"

    def to_json(self) -> dict:
        return {
            "ground": [list(p) for p in self.ground.parts],
            "k": self.k,
            "densities": self.densities.to_json(),
            "labels": {str(i): {",".join(map(str, Q)): v for Q, v in lv.items()}
                       for i, lv in self.labels.items()},
        }


class Slice:
    """One cell per cluster set: ``labels[i][A]`` picks the level-``i`` label on clusters ``A``."""

    def __init__(self, family: PartitionFamily, labels: Mapping[int, Mapping[tuple, int]]):
        self.family = family
        self.labels = {i: {tuple(sorted(A)): int(v) for A, v in labels.get(i, {}).items()}
                       for i in range(2, family.k)}

    @property
    def k(self):
        return self.family.k

    def contains(self, Q) -> bool:
        """Whether the vertex set ``Q`` (size ``< k``) belongs to the slice."""
        Q = canon(Q)
        P = self.family.ground
        if len(Q) >= self.k or not P.is_partite(Q):
            return False
        for size in range(2, len(Q) + 1):
            for sub in combinations(Q, size):
                A = tuple(sorted(P.part_of(v) for v in sub))
                if self.family.labels[size][sub] != self.labels[size][A]:
                    return False
        return True

    @cached_property
    def levels(self) -> tuple:
        """Member sets of each level ``0..k-1``, as frozensets of sorted tuples."""
        F = self.family
        P = F.ground
        out = [frozenset({()}), frozenset((v,) for v in range(F.n))]
        for i in range(2, self.k):
            prev = out[i - 1]
            keep = set()
            for Q in partite_sets(P, i):
                A = tuple(sorted(P.part_of(v) for v in Q))
                if F.labels[i][Q] != self.labels[i][A]:
                    continue
                if all(Q[:j] + Q[j + 1:] in prev for j in range(i)):
                    keep.add(Q)
            out.append(frozenset(keep))
        return tuple(out[: self.k])

    def complex(self) -> Complex:
        return Complex(self.family.n, self.k - 1, (e for lv in self.levels for e in lv))

    def top(self) -> frozenset:
        """The ``(k-1)``-sets of the slice."""
        return self.levels[self.k - 1]

    def polyad(self, X) -> KGraph:
        """``(k-1)``-sets of the slice whose clusters lie inside the ``k``-set ``X``."""
        X = set(X)
        P = self.family.ground
        return KGraph(self.k - 1, self.family.n,
                      (Q for Q in self.top() if {P.part_of(v) for v in Q} <= X))

    def supported(self, X) -> list:
        """``K_k`` of the polyad on ``X``: transversals of ``X`` all of whose facets are in the slice."""
        P = self.family.ground
        top = self.top()
        out = []
        for Q in product(*(P.parts[a] for a in sorted(X))):
            Q = canon(Q)
            if all(Q[:j] + Q[j + 1:] in top for j in range(len(Q))):
                out.append(Q)
        return out

    def __eq__(self, other):
        return isinstance(other, Slice) and self.family == other.family and self.labels == other.labels

    def __hash__(self):
        return hash(tuple((i, tuple(sorted(lv.items()))) for i, lv in self.labels.items()))

    def __repr__(self):
        return f"Slice({self.labels})"

    def to_json(self) -> dict:
        F = self.family
        return {
            "ground": [list(p) for p in F.ground.parts],
            "densities": F.densities.to_json(),
            "labels": {",".join(map(str, A)): v
                       for i in sorted(self.labels) for A, v in sorted(self.labels[i].items())},
        }


def _cluster_sets(F: PartitionFamily):
    for i in range(2, F.k):
        for A in combinations(range(F.t), i):
            yield i, A


def sample_slice(F: PartitionFamily, seed=0) -> Slice:
    """Draw a uniform label for each cluster ``i``-set, levels upward, sets in lex order."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    labels = {i: {} for i in range(2, F.k)}
    for i, A in _cluster_sets(F):
        labels[i][A] = int(rng.integers(1, F.densities.cells(i) + 1))
    return Slice(F, labels)


def enumerate_slices(F: PartitionFamily):
    keys = list(_cluster_sets(F))
    ranges = [range(1, F.densities.cells(i) + 1) for i, _ in keys]
    for choice in product(*ranges):
        labels = {i: {} for i in range(2, F.k)}
        for (i, A), v in zip(keys, choice):
            labels[i][A] = v
        yield Slice(F, labels)


def slice_probability(F: PartitionFamily, S: Slice) -> Fraction:
    """Probability that :func:`sample_slice` returns ``S``: ``prod d_i^C(t,i)``."""
    if S.family != F:
        raise ForeignSliceError("slice was built from a different family")
    for i, A in _cluster_sets(F):
        v = S.labels.get(i, {}).get(A)
        if v is None or not 1 <= v <= F.densities.cells(i):
            raise ForeignSliceError(f"slice has no valid label on clusters {A}")
    if sum(len(lv) for lv in S.labels.values()) != sum(1 for _ in _cluster_sets(F)):
        raise ForeignSliceError("slice labels clusters outside the family")
    p = Fraction(1)
    for i in range(2, F.k):
        p *= F.densities[i] ** comb(F.t, i)
    return p


def trivial_slice(ground: GroundPartition, k: int) -> Slice:
    F = PartitionFamily.trivial(ground, k)
    return Slice(F, {i: {A: 1 for A in combinations(range(F.t), i)} for i in range(2, k)})


# -- refinement ---------------------------------------------------------

def random_refinement(F: PartitionFamily, p: int, seed=0) -> PartitionFamily:
    """Split each cluster uniformly into ``p`` equal parts.

    Fine cluster ``c p + q`` is the ``q``-th part of cluster ``c``. Sets that
    are partite for the old clusters keep their labels; the rest get fresh
    uniform labels.
    """
    if p < 1:
        raise InvalidQueryError("p must be positive")
    size = len(F.ground.parts[0])
    if size % p:
        raise InvalidQueryError(f"cluster size {size} is not divisible by {p}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    step = size // p
    assignment = [0] * F.n
    for c, part in enumerate(F.ground.parts):
        order = rng.permutation(len(part))
        for pos, idx in enumerate(order):
            assignment[part[idx]] = c * p + pos // step
    fine = GroundPartition(assignment, F.t * p)
    labels = {}
    for i in range(2, F.k):
        level = {}
        top = F.densities.cells(i)
        for Q in partite_sets(fine, i):
            if F.ground.is_partite(Q):
                level[Q] = F.labels[i][Q]
            else:
                level[Q] = int(rng.integers(1, top + 1))
        labels[i] = level
    return PartitionFamily(fine, F.k, F.densities, labels)


def generated_from_check(Ff: PartitionFamily, F: PartitionFamily) -> bool:
    """Whether ``Ff`` refines ``F``: clusters nest, and every fine cell made of
    coarse-partite sets sits inside a single coarse cell."""
    if Ff.n != F.n or Ff.k != F.k:
        return False
    owner = {}
    for v in range(F.n):
        c = owner.setdefault(Ff.ground.part_of(v), F.ground.part_of(v))
        if c != F.ground.part_of(v):
            return False
    for i in range(2, F.k):
        seen = {}
        for Q in partite_sets(Ff.ground, i):
            if not F.ground.is_partite(Q):
                continue
            coarse = F.cell(Q)
            if seen.setdefault(Ff.cell(Q), coarse) != coarse:
                return False
    return True


@dataclass(frozen=True)
class SubsetDensityStats:
    trials: int
    successes: int
    frequency: float
    bound: float
    slack: float
    density: float

    @property
    def passes(self) -> bool:
        return self.frequency >= self.bound - self.slack


def subset_density_test(B: KGraph, parts, p: int, delta: float, trials: int,
                        seed=0) -> SubsetDensityStats:
    """Monte Carlo check that restricting the first part to a random ``1/p``
    share keeps the density within ``delta``.

    The reference bound is ``1 - (4/delta) exp(-delta^4 |V_1| / (32 p^2))``;
    ``slack`` is three binomial standard deviations at that bound.
    """
    parts = [sorted(q) for q in parts]
    if len(parts) != B.k:
        raise InvalidQueryError("B must be s-partite with one part per vertex of an edge")
    V1 = parts[0]
    if len(V1) % p:
        raise InvalidQueryError(f"|V_1| = {len(V1)} is not divisible by {p}")
    P = GroundPartition.from_parts(parts, B.n)
    if any(not P.is_partite(e) for e in B.edges):
        raise InvalidQueryError("B has an edge that is not partite")
    rest = 1
    for q in parts[1:]:
        rest *= len(q)
    pos = {v: j for j, v in enumerate(V1)}
    deg = np.zeros(len(V1), dtype=np.int64)
    for e in B.edges:
        for v in e:
            if v in pos:
                deg[pos[v]] += 1
    total = len(V1) * rest
    d = deg.sum() / total if total else 0.0
    ell = len(V1) // p
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    keys = rng.random((trials, len(V1)))
    picks = np.argsort(keys, axis=1)[:, :ell]
    sub = deg[picks].sum(axis=1) / (ell * rest)
    ok = int(np.count_nonzero(np.abs(sub - d) <= delta))
    bound = 1 - (4 / delta) * exp(-(delta ** 4) * len(V1) / (32 * p * p))
    q = min(max(bound, 0.0), 1.0)
    slack = 3 * sqrt(q * (1 - q) / trials)
    return SubsetDensityStats(trials, ok, ok / trials, bound, slack, float(d))
