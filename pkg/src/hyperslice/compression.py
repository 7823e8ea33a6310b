"""Shifting (compression) of complexes, low-degree pruning and the ratio
matching extractor built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .core import Complex, KGraph, canon, level_counts
from .errors import HypothesisViolatedError, InvalidQueryError
from .matchings import Matching, matching_number
from .tight import tight_components

# Instances up to this many vertices get the exact matching-number cross-check.
ORACLE_MAX_N = 12


def _shift(e, i, j):
    return canon([i if v == j else v for v in e])


def compress_ij(C: Complex, i: int, j: int) -> Complex:
    """Apply the shift ``S_ij`` to every level at once.

    Each edge containing ``j`` but not ``i`` moves to the set with ``j``
    replaced by ``i`` unless that set is already an edge.
    """
    if not (0 <= i < j < C.n):
        raise InvalidQueryError(f"need 0 <= i < j < n, got i={i}, j={j}")
    out = []
    changed = False
    for e in C.edges():
        if j in e and i not in e:
            f = _shift(e, i, j)
            if f not in C:
                out.append(f)
                changed = True
                continue
        out.append(e)
    if not changed:
        return C
    return Complex(C.n, C.k, out)


def fully_compress(C: Complex, trace: list | None = None) -> Complex:
    """Apply ``S_ij`` over all pairs in lexicographic order until a pass is idle.

    Each effective shift lowers the sum of all vertex labels over all edges,
    so the loop terminates.
    """
    while True:
        moved = False
        for i, j in combinations(range(C.n), 2):
            D = compress_ij(C, i, j)
            if D is not C:
                moved = True
                if trace is not None:
                    trace.append(("compress", (i, j), level_counts(D)))
                C = D
        if not moved:
            return C


def is_fully_compressed(C: Complex) -> bool:
    """Every edge with ``j`` in it and ``i < j`` outside has its shift present."""
    for e in C.edges():
        es = set(e)
        for j in e:
            for i in range(j):
                if i not in es and _shift(e, i, j) not in C:
                    return False
    return True


def prune_low_degree(C: Complex, r: int, trace: list | None = None) -> Complex:
    """Delete any level-``l`` edge with fewer than ``(k-l) r`` extensions, with its supersets.

    Repeats until every level below the top meets its threshold.
    """
    if r < 1:
        raise InvalidQueryError("r must be at least 1")
    k = C.k
    while True:
        bad = [e for l in range(k) for e in C.level(l) if C.up_degree(e) < (k - l) * r]
        if not bad:
            return C
        bad_sets = [set(e) for e in bad]
        kept = [e for e in C.edges() if not any(b.issubset(e) for b in bad_sets)]
        C = Complex(C.n, k, kept)
        if trace is not None:
            trace.append(("prune", tuple(bad), level_counts(C)))


def ratio_deficit(C: Complex, r: int) -> int:
    """``(r-1) e_{k-1} + 1 - e_k``; the ratio hypothesis holds iff this is <= 0."""
    counts = level_counts(C)
    k = C.k
    return (r - 1) * counts[k - 1] + 1 - counts[k]


@dataclass
class RatioMatchingResult:
    matching: Matching
    compressed: Complex
    oracle_nu: int | None = None
    trace: list = field(default_factory=list)

    @property
    def active_vertices(self) -> int:
        """Vertices lying in some top edge of the compressed complex."""
        return len({v for e in self.compressed.level(self.compressed.k) for v in e})


def ratio_matching(C: Complex, r: int, oracle: bool | None = None) -> RatioMatchingResult:
    """A matching of ``r`` top edges in a pruned, fully compressed version of ``C``.

    Needs ``e_k >= (r-1) e_{k-1} + 1``. Alternates pruning to a fixpoint and
    compression to a fixpoint until neither changes anything, then returns
    ``{m-1, r+m-1, ..., (k-1)r+m-1}`` for ``m = 1..r``. The matching lives in
    the compressed complex; for small instances the matching number of the
    original top level is checked to be at least ``r``.
    """
    if r < 1:
        raise InvalidQueryError("r must be at least 1")
    deficit = ratio_deficit(C, r)
    if deficit > 0:
        raise HypothesisViolatedError(
            f"e_k falls short of (r-1) e_(k-1) + 1 by {deficit}", "ratio", deficit)
    k = C.k
    trace = []
    H = C
    while True:
        H2 = fully_compress(prune_low_degree(H, r, trace), trace)
        if H2 == H:
            break
        H = H2
        if ratio_deficit(H, r) > 0:
            raise AssertionError("pruning broke the ratio inequality")
    edges = tuple(tuple((l * r) + m - 1 for l in range(k)) for m in range(1, r + 1))
    m = Matching(edges)
    if not m.is_valid(H.level_graph(k)):
        raise AssertionError(f"explicit matching {edges} missing from the compressed complex")
    res = RatioMatchingResult(m, H, None, trace)
    if res.active_vertices < k * r:
        raise AssertionError("compressed complex has fewer than k r active vertices")
    if oracle is None:
        oracle = C.n <= ORACLE_MAX_N
    if oracle:
        res.oracle_nu = matching_number(C.level_graph(k))[0]
        if res.oracle_nu < r:
            raise AssertionError(f"original matching number {res.oracle_nu} < {r}")
    return res


@dataclass(frozen=True)
class ComponentDensity:
    component: int
    top: int        # edges in the component
    lower: int      # distinct (k-1)-subsets of those edges

    def satisfies(self, G: KGraph) -> bool:
        return self.top * comb(G.n, G.k - 1) >= self.lower * len(G)


def component_densities(G: KGraph) -> list:
    labels = tight_components(G)
    out = []
    for cid, members in enumerate(labels.components()):
        shadow = {s for e in members for s in combinations(e, G.k - 1)}
        out.append(ComponentDensity(cid, len(members), len(shadow)))
    return out


def densest_component(G: KGraph) -> ComponentDensity | None:
    """Component maximising top edges per shadow edge (ties: smallest id).

    Some component always has ``e_k * C(n, k-1) >= e_(k-1) * e(G)``; that one
    is returned.
    """
    comps = component_densities(G)
    if not comps:
        return None
    best = max(comps, key=lambda c: (Fraction(c.top, c.lower), -c.component))
    return best
