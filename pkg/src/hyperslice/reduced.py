"""Reduced graphs of a k-graph with respect to a slice, and the densities
used to compare a graph with its reduced graph."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, log2, perm
from typing import Iterable, Sequence

from .core import KGraph, canon
from .errors import InvalidQueryError, UndefinedDensityError
from .regularity import (
    DEFAULT_EXHAUSTIVE_CAP,
    Falsified,
    RegularityParams,
    regularity_falsify,
)
from .slices import Slice


class WeightedReducedGraph:
    """Every ``k``-set of clusters ``0..t-1`` with a weight in ``[0, 1]``.

    Acts as a walk host: ``has_edge`` is true for positive weight.
    """

    def __init__(self, t: int, k: int, weights: dict):
        self.t = t
        self.k = k
        self.weights = {}
        for X in combinations(range(t), k):
            w = Fraction(weights.get(X, 0))
            if not 0 <= w <= 1:
                raise InvalidQueryError(f"weight {w} of {X} outside [0, 1]")
            self.weights[X] = w
        extra = set(map(canon, weights)) - set(self.weights)
        if extra:
            raise InvalidQueryError(f"weights given for non-k-sets {sorted(extra)[:3]}")

    @property
    def n(self) -> int:
        return self.t

    def weight(self, X) -> Fraction:
        return self.weights[canon(X)]

    def has_edge(self, X) -> bool:
        X = canon(X)
        return X in self.weights and self.weights[X] > 0

    @property
    def edges(self) -> tuple:
        return tuple(X for X, w in self.weights.items() if w > 0)

    def threshold(self, d) -> KGraph:
        """Unweighted k-graph of clusters with weight at least ``d``."""
        return KGraph(self.k, self.t, (X for X, w in self.weights.items() if w >= d))

    def __repr__(self):
        return f"WeightedReducedGraph(t={self.t}, k={self.k})"

    def to_json(self) -> dict:
        return {",".join(map(str, X)): str(w) for X, w in self.weights.items()}


def _host_weight(host):
    if isinstance(host, WeightedReducedGraph):
        return host.weight
    if isinstance(host, KGraph):
        es = host.edge_set
        return lambda e: 1 if canon(e) in es else 0
    raise InvalidQueryError(f"unsupported host {type(host).__name__}")


def _host_vertices(host) -> int:
    return host.t if isinstance(host, WeightedReducedGraph) else host.n


# -- reduced graphs -----------------------------------------------------

def weighted_reduced(G: KGraph, S: Slice) -> WeightedReducedGraph:
    """Weight of a cluster ``k``-set: share of its polyad's supported ``k``-sets that are edges."""
    F = S.family
    if F.n != G.n or F.k != G.k:
        raise InvalidQueryError("slice and graph disagree on n or k")
    es = G.edge_set
    weights = {}
    for X in combinations(range(F.t), G.k):
        K = S.supported(X)
        weights[X] = Fraction(sum(1 for Q in K if Q in es), len(K)) if K else Fraction(0)
    return WeightedReducedGraph(F.t, G.k, weights)


def regularity_verdicts(G: KGraph, S: Slice, eps_k, r: int = 1, mode: str = "auto",
                        trials: int = 200, seed=0, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> dict:
    """Regularity verdict of ``G`` on each cluster ``k``-set.

    ``auto`` uses exhaustive search when the polyad has at most ``cap``
    edges and sampling otherwise.
    """
    F = S.family
    params = RegularityParams(None, Fraction(eps_k), None, r)
    out = {}
    for X in combinations(range(F.t), G.k):
        base = S.polyad(X)
        Xs = set(X)
        H = KGraph(G.k, G.n, (e for e in G.edges
                              if F.ground.is_partite(e) and {F.ground.part_of(v) for v in e} == Xs))
        m = mode
        if m == "auto":
            m = "exhaustive" if len(base) <= cap else "sampled"
        out[X] = regularity_falsify(H, base, params, mode=m, trials=trials,
                                    seed=[seed, *X] if not hasattr(seed, "integers") else seed,
                                    partition=F.ground, cap=cap)
    return out


def d_reduced(G: KGraph, S: Slice, params: RegularityParams, verdicts: dict | None = None,
              **kw) -> KGraph:
    """Cluster ``k``-sets that are not falsified at ``(eps_k, r)`` and have weight ``>= d``.

    ``params.d`` is the weight threshold; ``params.eps_k`` (falling back to
    ``params.eps``) the regularity tolerance. Precomputed ``verdicts`` may be
    passed to reuse one regularity run.
    """
    if params.d is None or params.d <= 0:
        raise InvalidQueryError("d must be positive")
    eps_k = params.eps_k if params.eps_k is not None else params.eps
    if verdicts is None:
        verdicts = regularity_verdicts(G, S, eps_k, params.r, **kw)
    R = weighted_reduced(G, S)
    keep = [X for X, w in R.weights.items()
            if w >= params.d and not isinstance(verdicts[X], Falsified)]
    return KGraph(G.k, R.t, keep)


# -- densities ----------------------------------------------------------

def _count_maps(hverts: Sequence[int], domain: Sequence[int], fixed: dict,
                factors: list, cluster_of=None) -> Fraction:
    """Sum over injective maps of ``hverts`` into ``domain`` (extending ``fixed``)
    of the product of ``factors``; each factor is ``(H-vertex tuple, fn(image))``.
    With ``cluster_of`` the mapped ``hverts`` must land in distinct clusters."""
    pos = {h: i for i, h in enumerate(hverts)}
    ready = [[] for _ in hverts]
    base = Fraction(1)
    for verts, fn in factors:
        free = [pos[v] for v in verts if v in pos]
        if not free:
            base *= fn(tuple(fixed[v] for v in verts))
        else:
            ready[max(free)].append((verts, fn))
    if base == 0:
        return Fraction(0)
    image = dict(fixed)
    used = set(fixed.values())
    clusters = set()
    total = Fraction(0)

    def rec(i, acc):
        nonlocal total
        if i == len(hverts):
            total += acc
            return
        h = hverts[i]
        for v in domain:
            if v in used:
                continue
            c = cluster_of(v) if cluster_of else None
            if cluster_of and c in clusters:
                continue
            image[h] = v
            w = acc
            for verts, fn in ready[i]:
                w = w * fn(tuple(image[x] for x in verts))
                if not w:
                    break
            if w:
                used.add(v)
                if cluster_of:
                    clusters.add(c)
                rec(i + 1, w)
                used.discard(v)
                if cluster_of:
                    clusters.discard(c)
            del image[h]

    rec(0, base)
    return total


def h_density(host, H: KGraph, vertices: Iterable[int] | None = None) -> Fraction:
    """Average over injections ``V(H) -> V(host)`` of the product of edge weights.

    ``vertices`` restricts the host to an induced sub-host.
    """
    dom = sorted(set(vertices)) if vertices is not None else list(range(_host_vertices(host)))
    if H.k != host.k:
        raise InvalidQueryError("H and host differ in uniformity")
    if H.n > len(dom):
        raise InvalidQueryError("H has more vertices than the host")
    w = _host_weight(host)
    factors = [(e, w) for e in H.edges]
    n_h = _count_maps(list(range(H.n)), dom, {}, factors)
    return n_h / perm(len(dom), H.n)


def rel_degree(Y: Iterable[int], host, X: Iterable[int]) -> Fraction:
    """Weighted share of ``k``-sets ``Y <= e <= Y | X`` that are edges."""
    Y = canon(Y)
    j, k = len(Y), host.k
    if not 1 <= j <= k - 1:
        raise InvalidQueryError(f"|Y| must lie in 1..{k - 1}")
    rest = sorted(set(X) - set(Y))
    denom = comb(len(rest), k - j)
    if denom == 0:
        raise UndefinedDensityError("no k-sets extend Y inside X")
    w = _host_weight(host)
    total = sum((Fraction(w(Y + ext)) for ext in combinations(rest, k - j)), Fraction(0))
    return total / denom


def slice_rel_degree(Y: Iterable[int], S: Slice, G: KGraph, U: Iterable[int]) -> Fraction:
    """Mean of ``rel_degree(T, G, U)`` over the slice's sets ``T`` with cluster set ``Y``."""
    Y = set(Y)
    P = S.family.ground
    members = [T for T in S.levels[len(Y)]
               if T and {P.part_of(v) for v in T} == Y]
    if not members:
        raise UndefinedDensityError("slice has no set on these clusters")
    return sum((rel_degree(T, G, U) for T in members), Fraction(0)) / len(members)


def _skeleton(H: KGraph, roots) -> list:
    """Sets of size ``1..k-1`` inside edges of ``H`` avoiding the roots."""
    roots = set(roots)
    out = set()
    for e in H.edges:
        free = [v for v in e if v not in roots]
        for size in range(1, min(len(free), H.k - 1) + 1):
            out.update(combinations(free, size))
    return sorted(out)


def rooted_density(G: KGraph, H: KGraph, roots: Sequence[int], targets: Sequence[int],
                   slice: Slice | None = None) -> Fraction:
    """Density of copies of ``H`` in ``G`` sending ``roots[i]`` to ``targets[i]``.

    Without a slice the normaliser counts all injections extending the
    roots. With a slice, the non-root vertices must land in distinct
    clusters with the skeleton of ``H`` mapped into the slice, and the
    normaliser counts skeleton copies in the slice.
    """
    roots, targets = tuple(roots), tuple(targets)
    if len(roots) != len(targets) or len(set(roots)) != len(roots) or len(set(targets)) != len(targets):
        raise InvalidQueryError("roots and targets must be equally many distinct vertices")
    if any(not 0 <= x < H.n for x in roots) or any(not 0 <= v < G.n for v in targets):
        raise InvalidQueryError("root or target out of range")
    if H.k != G.k:
        raise InvalidQueryError("H and G differ in uniformity")
    fixed = dict(zip(roots, targets))
    free = [x for x in range(H.n) if x not in fixed]
    es = G.edge_set
    edge = lambda img: 1 if canon(img) in es else 0
    factors = [(e, edge) for e in H.edges]
    dom = list(range(G.n))
    if slice is None:
        count = _count_maps(free, dom, fixed, factors)
        return count / perm(G.n - len(roots), H.n - len(roots))
    skel = _skeleton(H, roots)
    inside = lambda img: 1 if slice.contains(img) else 0
    cl = slice.family.ground.part_of
    skel_factors = [(f, inside) for f in skel if len(f) >= 2]
    denom = _count_maps(free, dom, {}, skel_factors, cluster_of=cl)
    if denom == 0:
        raise UndefinedDensityError("the skeleton of H has no copy in the slice")
    count = _count_maps(free, dom, fixed, factors + skel_factors, cluster_of=cl)
    return count / denom


# -- comparison of G and its reduced graphs -----------------------------

def _irregular(verdicts: dict) -> set:
    return {X for X, v in verdicts.items() if isinstance(v, Falsified)}


def reduced_inequality_slacks(R: WeightedReducedGraph, Rd: KGraph, irregular: set, d, eps_k,
                              H: KGraph, X: Sequence[int], Ys: Iterable[Sequence[int]]) -> dict:
    """Left minus right side of the two inequalities comparing ``R_d`` with ``R``.

    The loss from irregular sets is charged at ``max(eps_k C(t,k), m)`` with
    ``m`` the number of falsified sets, so the bound stays valid when the
    slice is less regular than ``eps_k`` promises.
    """
    d, eps_k = Fraction(d), Fraction(eps_k)
    k, t = R.k, R.t
    X = sorted(X)
    charged = max(eps_k * comb(t, k), Fraction(len(irregular)))
    lost = charged * len(H) / comb(len(X), k)
    density = h_density(Rd, H, X) - (h_density(R, H, X) - d - lost)
    degrees = {}
    for Y in Ys:
        Y = canon(Y)
        rest = sorted(set(X) - set(Y))
        ext = [Y + e for e in combinations(rest, k - len(Y))]
        zeta = Fraction(sum(1 for Z in ext if canon(Z) in irregular), len(ext))
        degrees[Y] = rel_degree(Y, Rd, X) - (rel_degree(Y, R, X) - d - zeta)
    return {"density": density, "degrees": degrees, "charged_irregular": charged}


def _dec(x) -> str:
    return f"{float(x):.12f}"


def slice_quality_report(G: KGraph, S: Slice, H_list: Sequence[KGraph], X: Sequence[int],
                         root_queries: Sequence = (), d=Fraction(1, 2), eps_k=Fraction(1, 10),
                         r: int = 1, verdicts: dict | None = None, **kw) -> dict:
    """Measured discrepancies between ``G`` and its reduced graph, plus the
    exact slacks of the two reduced-graph inequalities (asserted >= 0)."""
    F = S.family
    k, t = G.k, F.t
    X = sorted(X)
    if verdicts is None:
        verdicts = regularity_verdicts(G, S, eps_k, r, **kw)
    irregular = _irregular(verdicts)
    R = weighted_reduced(G, S)
    Rd = d_reduced(G, S, RegularityParams(Fraction(d), Fraction(eps_k), Fraction(eps_k), r),
                   verdicts=verdicts)
    U = sorted(v for c in X for v in F.ground.parts[c])
    report = {"clusters": X, "irregular_fraction": str(Fraction(len(irregular), comb(t, k)))}

    dens = []
    for H in H_list:
        row = {"h_vertices": H.n, "h_edges": len(H)}
        if H.n <= len(X):
            a = h_density(R, H, X)
            b = h_density(G, H, U)
            row.update(reduced=str(a), graph=str(b), discrepancy=_dec(abs(a - b)))
        dens.append(row)
    report["h_densities"] = dens

    degs = []
    for j in range(1, k):
        for Y in combinations(range(t), j):
            if comb(len(set(X) - set(Y)), k - j) == 0:
                continue
            a = rel_degree(Y, R, X)
            try:
                b = slice_rel_degree(Y, S, G, U)
            except UndefinedDensityError:
                continue
            degs.append({"Y": list(Y), "reduced": str(a), "graph": str(b),
                         "discrepancy": _dec(abs(a - b))})
    report["relative_degrees"] = degs

    rooted = []
    for H, roots, targets in root_queries:
        plain = rooted_density(G, H, roots, targets)
        try:
            sup = rooted_density(G, H, roots, targets, S)
        except UndefinedDensityError:
            rooted.append({"roots": list(roots), "targets": list(targets), "plain": str(plain),
                           "supported": None, "discrepancy": None})
            continue
        rooted.append({"roots": list(roots), "targets": list(targets), "plain": str(plain),
                       "supported": str(sup), "discrepancy": _dec(abs(plain - sup))})
    report["rooted"] = rooted

    slacks = []
    Ys = [Y for j in range(1, k) for Y in combinations(range(t), j)
          if comb(len(set(X) - set(Y)), k - j) > 0]
    for H in H_list:
        if H.n > len(X) or len(X) < k:
            continue
        s = reduced_inequality_slacks(R, Rd, irregular, d, eps_k, H, X, Ys)
        if s["density"] < 0 or any(v < 0 for v in s["degrees"].values()):
            raise AssertionError(f"reduced-graph inequality violated: {s}")
        slacks.append({"density": str(s["density"]),
                       "degrees": {",".join(map(str, Y)): str(v) for Y, v in s["degrees"].items()}})
    report["reduced_slacks"] = slacks

    m = len(F.ground.parts[0])
    expect = Fraction(m) ** k
    for i in range(2, k):
        expect *= F.densities[i] ** comb(k, i)
    counting = []
    for Xp in combinations(X, k):
        got = len(S.supported(Xp))
        counting.append({"X": list(Xp), "count": got, "expected": str(expect),
                         "deviation": _dec(Fraction(got) / expect - 1)})
    report["counting"] = counting
    return report


def binary_entropy(x) -> float:
    x = float(x)
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def reduced_entropy(R: WeightedReducedGraph) -> float:
    """Mean binary entropy of the weights over all cluster ``k``-sets."""
    if R.t < R.k:
        raise InvalidQueryError("need at least k clusters")
    ws = list(R.weights.values())
    return sum(binary_entropy(w) for w in ws) / len(ws)
