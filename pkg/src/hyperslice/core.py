"""Exact k-graphs, levelled hypergraphs, complexes and vertex partitions.

Vertices are dense integers ``0..n-1``. Every edge is stored as a sorted
tuple, and edge collections are iterated in lexicographic order, so every
derived quantity is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapacityError, InvalidQueryError

#: Upper limit on the number of subsets a single complex construction may
#: materialise. Adjust per call via the ``cap`` arguments.
DEFAULT_CAP = 2 ** 24

Edge = tuple


def canon(vertices: Iterable[int]) -> Edge:
    return tuple(sorted(vertices))


class KGraph:
    """A k-uniform hypergraph on the vertex set ``{0, ..., n-1}``."""

    __slots__ = ("k", "n", "edges", "_edge_set")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]] = (), *,
                 allow_duplicates: bool = False):
        if k < 1:
            raise ValueError(f"uniformity must be positive, got {k}")
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        seen = set()
        for raw in edges:
            e = canon(raw)
            if len(e) != k or len(set(e)) != k:
                raise ValueError(f"edge {raw!r} does not have {k} distinct vertices")
            if e[0] < 0 or e[-1] >= n:
                raise ValueError(f"edge {raw!r} has a vertex outside 0..{n - 1}")
            if e in seen and not allow_duplicates:
                raise ValueError(f"duplicate edge {e!r}")
            seen.add(e)
        self.k = k
        self.n = n
        self._edge_set = frozenset(seen)
        self.edges = tuple(sorted(seen))

    # -- basic queries -------------------------------------------------
    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e):
        return canon(e) in self._edge_set

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return canon(vertices) in self._edge_set

    @property
    def edge_set(self) -> frozenset:
        return self._edge_set

    def __eq__(self, other):
        if not isinstance(other, KGraph):
            return NotImplemented
        return (self.k, self.n, self._edge_set) == (other.k, other.n, other._edge_set)

    def __hash__(self):
        return hash((self.k, self.n, self._edge_set))

    def __repr__(self):
        return f"KGraph(k={self.k}, n={self.n}, e={len(self.edges)})"

    def vertices_with_edges(self) -> tuple:
        return tuple(sorted({v for e in self.edges for v in e}))

    def induced(self, vertices: Iterable[int]) -> "KGraph":
        """Sub-k-graph on the same vertex range keeping edges inside ``vertices``."""
        keep = set(vertices)
        return KGraph(self.k, self.n, (e for e in self.edges if keep.issuperset(e)))

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "KGraph":
        return KGraph(self.k, self.n, edges)

    def density(self) -> Fraction:
        from math import comb
        total = comb(self.n, self.k)
        return Fraction(len(self.edges), total) if total else Fraction(0)


class LevelledHypergraph:
    """Edges of sizes ``0..k`` on ``{0, ..., n-1}``, one set per level.

    No closure property is assumed; see :class:`Complex` for the
    down-closed variant.
    """

    __slots__ = ("n", "k", "levels", "_all")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0 or k < 0:
            raise ValueError("n and k must be non-negative")
        levels = [set() for _ in range(k + 1)]
        for raw in edges:
            e = canon(raw)
            if len(set(e)) != len(e):
                raise ValueError(f"edge {raw!r} repeats a vertex")
            if len(e) > k:
                raise ValueError(f"edge {raw!r} is larger than the top level {k}")
            if e and (e[0] < 0 or e[-1] >= n):
                raise ValueError(f"edge {raw!r} has a vertex outside 0..{n - 1}")
            levels[len(e)].add(e)
        self.n = n
        self.k = k
        self.levels = tuple(frozenset(level) for level in levels)
        self._all = frozenset().union(*self.levels)
        self._validate()

    def _validate(self):
        pass

    def __contains__(self, e):
        return canon(e) in self._all

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return canon(vertices) in self._all

    def level(self, i: int) -> tuple:
        """Level-``i`` edges in lexicographic order (empty beyond the top)."""
        if i < 0 or i > self.k:
            return ()
        return tuple(sorted(self.levels[i]))

    def level_set(self, i: int) -> frozenset:
        if i < 0 or i > self.k:
            return frozenset()
        return self.levels[i]

    def level_graph(self, i: int) -> KGraph:
        return KGraph(i, self.n, self.levels[i])

    def edges(self):
        for i in range(self.k + 1):
            yield from self.level(i)

    def is_empty(self) -> bool:
        return not self._all

    def __eq__(self, other):
        if not isinstance(other, LevelledHypergraph):
            return NotImplemented
        return (self.n, self.k, self.levels) == (other.n, other.k, other.levels)

    def __hash__(self):
        return hash((self.n, self.k, self.levels))

    def __repr__(self):
        name = type(self).__name__
        return f"{name}(n={self.n}, k={self.k}, counts={level_counts(self)})"

    def is_down_closed(self) -> bool:
        for e in self._all:
            for j in range(len(e)):
                if e[:j] + e[j + 1:] not in self._all:
                    return False
        return True

    def up_degree(self, e: Edge) -> int:
        """Number of edges one level up that contain ``e``."""
        e = canon(e)
        top = self.level_set(len(e) + 1)
        return sum(1 for v in range(self.n) if v not in e and canon(e + (v,)) in top)


class Complex(LevelledHypergraph):
    """A down-closed :class:`LevelledHypergraph`.

    Construction fails unless every subset of every edge is present; in
    particular a non-empty complex always contains the empty edge.
    """

    __slots__ = ()

    def _validate(self):
        if not self.is_down_closed():
            raise ValueError("edge set is not down-closed")


class GroundPartition:
    """Assignment of each vertex to one of ``t`` parts."""

    __slots__ = ("assignment", "t", "_parts")

    def __init__(self, assignment: Sequence[int], t: int | None = None):
        assignment = tuple(int(a) for a in assignment)
        if t is None:
            t = max(assignment) + 1 if assignment else 0
        if any(a < 0 or a >= t for a in assignment):
            raise ValueError("part id out of range")
        parts = [[] for _ in range(t)]
        for v, a in enumerate(assignment):
            parts[a].append(v)
        self.assignment = assignment
        self.t = t
        self._parts = tuple(tuple(p) for p in parts)

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]], n: int | None = None):
        parts = [sorted(p) for p in parts]
        if n is None:
            n = sum(len(p) for p in parts)
        assignment = [-1] * n
        for pid, part in enumerate(parts):
            for v in part:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} outside 0..{n - 1}")
                if assignment[v] != -1:
                    raise ValueError(f"vertex {v} appears in two parts")
                assignment[v] = pid
        if -1 in assignment:
            raise ValueError("parts do not cover every vertex")
        return cls(assignment, len(parts))

    @classmethod
    def consecutive(cls, n: int, t: int):
        """``t`` equal blocks of consecutive vertices."""
        if t <= 0 or n % t:
            raise ValueError(f"cannot split {n} vertices into {t} equal blocks")
        m = n // t
        return cls([v // m for v in range(n)], t)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def parts(self) -> tuple:
        return self._parts

    @property
    def equal_size(self) -> bool:
        return len({len(p) for p in self._parts}) <= 1

    def part_of(self, v: int) -> int:
        return self.assignment[v]

    def index(self, vertices: Iterable[int]):
        """Set of parts met by a partite vertex set, or ``None`` if not partite."""
        ids = [self.assignment[v] for v in vertices]
        s = frozenset(ids)
        return s if len(s) == len(ids) else None

    def is_partite(self, vertices: Iterable[int]) -> bool:
        return self.index(vertices) is not None

    def partite_sets(self, parts: Iterable[int]):
        """All sets with exactly one vertex in each of ``parts`` (sorted)."""
        from itertools import product
        chosen = sorted(parts)
        out = [canon(c) for c in product(*(self._parts[p] for p in chosen))]
        return sorted(out)

    def __eq__(self, other):
        if not isinstance(other, GroundPartition):
            return NotImplemented
        return self.assignment == other.assignment and self.t == other.t

    def __hash__(self):
        return hash((self.assignment, self.t))

    def __repr__(self):
        return f"GroundPartition(t={self.t}, sizes={[len(p) for p in self._parts]})"


# -- operations ---------------------------------------------------------

def down_closure(G: KGraph, cap: int = DEFAULT_CAP) -> Complex:
    """Complex of all subsets of edges of ``G``; empty when ``G`` has no edges."""
    seen = set()
    for e in G.edges:
        for size in range(G.k + 1):
            for sub in combinations(e, size):
                if sub not in seen:
                    seen.add(sub)
                    if len(seen) > cap:
                        raise CapacityError(
                            f"down-closure exceeds {cap} subsets; raise cap to proceed")
    return Complex(G.n, G.k, seen)


def complex_from_levels(n: int, k: int, edges, *, close: bool = False,
                        cap: int = DEFAULT_CAP) -> Complex:
    """Build a complex from explicit edges; ``close=True`` adds all subsets."""
    edges = [canon(e) for e in edges]
    if close:
        seen = set()
        for e in edges:
            for size in range(len(e) + 1):
                seen.update(combinations(e, size))
                if len(seen) > cap:
                    raise CapacityError(f"closure exceeds {cap} subsets")
        edges = seen
    return Complex(n, k, edges)


def level_counts(C: LevelledHypergraph) -> tuple:
    return tuple(len(level) for level in C.levels)


def degree(S: Iterable[int], G: KGraph) -> int:
    """Number of edges of ``G`` containing every vertex of ``S``."""
    S = set(S)
    if len(S) >= G.k:
        raise InvalidQueryError(f"degree needs |S| < k = {G.k}, got |S| = {len(S)}")
    if any(not 0 <= v < G.n for v in S):
        raise InvalidQueryError("S contains a vertex outside the vertex range")
    return sum(1 for e in G.edges if S.issubset(e))


def supported_sets(H: KGraph, i: int, partition: GroundPartition | None = None) -> KGraph:
    """All ``i``-sets whose ``(i-1)``-subsets are all edges of ``H``.

    With ``partition`` given only partite ``i``-sets are returned.
    """
    if H.k != i - 1:
        raise InvalidQueryError(f"expected an ({i}-1)-graph, got uniformity {H.k}")
    found = set()
    hs = H.edge_set
    for b in H.edges:
        for v in range(H.n):
            if v in b:
                continue
            cand = canon(b + (v,))
            if cand in found:
                continue
            if partition is not None and not partition.is_partite(cand):
                continue
            if all(cand[:j] + cand[j + 1:] in hs for j in range(i)):
                found.add(cand)
    return KGraph(i, H.n, found)


def partite_restrict(H, P: GroundPartition, A: Iterable[int], strict_below: bool = False):
    """Edges of ``H`` whose index is exactly ``A`` (or a proper subset of it).

    Works on a :class:`KGraph` (returning one) or a levelled hypergraph; for
    the latter ``strict_below`` yields a :class:`Complex` whenever ``H`` is one.
    """
    A = frozenset(A)
    if not A.issubset(range(P.t)):
        raise InvalidQueryError("A contains an unknown part id")

    def keep(e):
        idx = P.index(e)
        if idx is None:
            return False
        return idx < A if strict_below else idx == A

    if isinstance(H, KGraph):
        return KGraph(H.k, H.n, (e for e in H.edges if keep(e)))
    kept = [e for e in H.edges() if keep(e)]
    if strict_below and isinstance(H, Complex):
        return Complex(H.n, H.k, kept)
    return LevelledHypergraph(H.n, H.k, kept)


def local_lym_margin(C: LevelledHypergraph, i: int) -> Fraction:
    """``e_{i-1}(C) - i/(n-i+1) * e_i(C)``, exact."""
    if i < 1 or i > C.k:
        raise InvalidQueryError(f"level {i} outside 1..{C.k}")
    if C.n < i:
        raise InvalidQueryError(f"need n >= i, got n={C.n}, i={i}")
    counts = level_counts(C)
    return counts[i - 1] - Fraction(i, C.n - i + 1) * counts[i]
