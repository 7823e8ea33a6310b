"""Integer and fractional matchings, partite degree hypotheses, and the
greedy construction of tightly connected matchings in partite complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor

from .core import Complex, GroundPartition, KGraph, LevelledHypergraph, canon
from .errors import GreedyStuckError, HypothesisViolatedError, InvalidQueryError
from .lp import check_certificate, solve_packing
from .tight import TightWalk, tight_components, verify_tight


@dataclass(frozen=True)
class Matching:
    edges: tuple

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def is_valid(self, host) -> bool:
        seen = set()
        for e in self.edges:
            if not host.has_edge(e) or seen.intersection(e):
                return False
            seen.update(e)
        return True


def matching_number(G: KGraph):
    """Exact matching number by branch and bound; returns ``(nu, Matching)``."""
    k = G.k
    best = []

    def rec(edges, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if not edges:
            return
        free = set()
        for e in edges:
            free.update(e)
        if len(chosen) + len(free) // k <= len(best):
            return
        v = edges[0][0]
        for e in edges:
            if e[0] != v:
                break
            rest = [f for f in edges if not set(f).intersection(e)]
            chosen.append(e)
            rec(rest, chosen)
            chosen.pop()
        rec([f for f in edges if v not in f], chosen)

    rec(list(G.edges), [])
    return len(best), Matching(tuple(best))


@dataclass(frozen=True)
class FractionalMatching:
    """Edge weights (non-zero entries only) with the dual cover certifying optimality."""

    n: int
    k: int
    weights: dict = field(hash=False)
    cover: tuple = ()

    @property
    def weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @property
    def is_perfect(self) -> bool:
        return self.weight * self.k == self.n

    def load(self, v: int) -> Fraction:
        return sum((w for e, w in self.weights.items() if v in e), Fraction(0))

    def is_valid(self) -> bool:
        if any(not 0 <= w <= 1 for w in self.weights.values()):
            return False
        return all(self.load(v) <= 1 for v in range(self.n))

    def to_json(self) -> dict:
        return {",".join(map(str, e)): str(w) for e, w in sorted(self.weights.items())}


def max_fractional_matching(G: KGraph, restrict_to: int | None = None) -> FractionalMatching:
    """Exact maximum fractional matching, optionally inside one tight component.

    The dual solution (a fractional vertex cover) is checked on every call.
    """
    edges = list(G.edges)
    if restrict_to is not None:
        labels = tight_components(G)
        if not 0 <= restrict_to < labels.count:
            raise InvalidQueryError(f"no tight component with id {restrict_to}")
        edges = labels.members(restrict_to)
    if not edges:
        return FractionalMatching(G.n, G.k, {}, tuple(Fraction(0) for _ in range(G.n)))
    A = [[1 if v in e else 0 for e in edges] for v in range(G.n)]
    b = [1] * G.n
    c = [1] * len(edges)
    sol = solve_packing(A, b, c)
    if not check_certificate(A, b, c, sol):
        raise AssertionError("simplex returned an uncertified optimum")
    weights = {e: w for e, w in zip(edges, sol.x) if w}
    fm = FractionalMatching(G.n, G.k, weights, sol.y)
    assert fm.is_valid()
    return fm


def verify_cover(G: KGraph, fm: FractionalMatching) -> bool:
    """Dual certificate: ``y >= 0``, every edge covered, and ``sum y == weight``."""
    y = fm.cover
    if len(y) != G.n or any(v < 0 for v in y):
        return False
    if any(sum(y[v] for v in e) < 1 for e in G.edges):
        return False
    return sum(y, Fraction(0)) == fm.weight


# -- partite hypotheses -------------------------------------------------

def _check_partition(H, P: GroundPartition, t: int):
    if P.n != H.n:
        raise InvalidQueryError("partition and hypergraph disagree on the vertex count")
    if P.t != H.k:
        raise InvalidQueryError(f"need {H.k} parts, got {P.t}")
    if any(len(part) != t for part in P.parts):
        raise InvalidQueryError(f"every part must have size {t}")
    for e in H.edges():
        if not P.is_partite(e):
            raise InvalidQueryError(f"edge {e} is not partite")


def _partite_extensions(H, P, e, j):
    """Edges one level up that contain ``e`` and meet part ``j``."""
    top = H.level_set(len(e) + 1)
    return sum(1 for v in P.parts[j] if canon(e + (v,)) in top)


@dataclass(frozen=True)
class FarkasVerdict:
    holds: bool
    violation: tuple | None = None   # (level i, part j, edge, extensions, required)
    lp_weight: Fraction | None = None

    @property
    def conclusion_holds(self):
        return self.lp_weight is not None


def check_farkas_hypothesis(H: LevelledHypergraph, P: GroundPartition, t: int,
                            verify_conclusion: bool = False) -> FarkasVerdict:
    """Partite degree condition guaranteeing a perfect fractional matching.

    For each level ``i < k`` and part ``j``, every level-``i`` edge missing
    part ``j`` must extend into part ``j`` in at least ``t - i t / k`` ways.
    With ``verify_conclusion`` the LP is run on the top level and its weight
    stored (an ``AssertionError`` is raised if it is not ``t``).
    """
    k = H.k
    if () not in H.level_set(0):
        raise InvalidQueryError("the empty set must be an edge")
    _check_partition(H, P, t)
    for i in range(k):
        need = t - Fraction(i * t, k)
        for e in H.level(i):
            hit = P.index(e)
            for j in range(k):
                if j in hit:
                    continue
                got = _partite_extensions(H, P, e, j)
                if got < need:
                    return FarkasVerdict(False, (i, j, e, got, need))
    weight = None
    if verify_conclusion:
        weight = max_fractional_matching(H.level_graph(k)).weight
        if weight != t:
            raise AssertionError(f"hypothesis holds but LP weight is {weight}, not {t}")
    return FarkasVerdict(True, None, weight)


def is_excellent(e, R: LevelledHypergraph) -> bool:
    """Whether every subset of the top-level edge ``e`` is an edge of ``R``."""
    e = canon(e)
    if len(e) != R.k or not R.has_edge(e):
        raise InvalidQueryError(f"{e} is not a top-level edge")
    return all(R.has_edge(s) for size in range(len(e)) for s in combinations(e, size))


def check_connected_matching_conditions(R: LevelledHypergraph, P: GroundPartition,
                                        t: int, alpha, beta):
    """Raise :class:`HypothesisViolatedError` unless conditions (i)-(iii) hold."""
    k = R.k
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 0 <= alpha < 1 or beta <= 0:
        raise InvalidQueryError("need 0 <= alpha < 1 and beta > 0")
    _check_partition(R, P, t)
    if () not in R.level_set(0):
        raise HypothesisViolatedError("empty set missing", "(i)", 1)
    missing = [v for v in range(R.n) if (v,) not in R.level_set(1)]
    if missing:
        raise HypothesisViolatedError(f"singletons missing: {missing}", "(i)", len(missing))
    need = (1 - beta) * t
    for i in range(1, k - 1):
        for e in R.level(i):
            hit = P.index(e)
            for j in range(k):
                if j in hit:
                    continue
                got = _partite_extensions(R, P, e, j)
                if got < need:
                    raise HypothesisViolatedError(
                        f"edge {e} extends into part {j} only {got} < {need} times",
                        "(ii)", need - got)
    need = (alpha + (2 ** k + 1) * beta) * t
    for e in R.level(k - 1):
        got = R.up_degree(e)
        if got < need:
            raise HypothesisViolatedError(
                f"edge {e} lies in only {got} < {need} top edges", "(iii)", need - got)


@dataclass(frozen=True)
class ConnectedMatchingResult:
    matching: Matching
    walk: TightWalk | None
    component: int
    fractional: FractionalMatching | None = None
    component_count: int | None = None


def _by_part(e, P):
    return tuple(sorted(e, key=P.part_of))


def _excellent_step(R, P, u, S):
    """Move from the excellent edge ``u`` (ordered by part) to one avoiding ``S``."""
    k = R.k
    v = []
    for i in range(k):
        ok = None
        for cand in P.parts[i]:
            if cand in S:
                continue
            edge = tuple(v) + (cand,) + tuple(u[i + 1:])
            if len(set(edge)) == k and R.has_edge(edge) and is_excellent(edge, R):
                ok = cand
                break
        if ok is None:
            raise GreedyStuckError(
                f"no vertex of part {i} extends {tuple(v)} + {u[i + 1:]} to an excellent edge")
        v.append(ok)
    return tuple(v)


def partite_connected_matching(R: LevelledHypergraph, P: GroundPartition, t: int,
                               alpha, beta, mode: str = "matching") -> ConnectedMatchingResult:
    """Greedy tightly connected matching of ``floor(alpha t)`` edges.

    Seeds with the lexicographically first excellent edge, then repeatedly
    walks to a fresh excellent edge avoiding every covered vertex, picking
    the smallest admissible vertex in each part. The matched edges are every
    ``k``-th window of the resulting tight path. In ``perfect_fractional``
    mode the LP optimum on the top level and its tight component count are
    returned as well.
    """
    check_connected_matching_conditions(R, P, t, alpha, beta)
    alpha = Fraction(alpha)
    if mode not in ("matching", "perfect_fractional"):
        raise InvalidQueryError(f"unknown mode {mode!r}")
    if mode == "perfect_fractional" and alpha < Fraction(1, 2):
        raise InvalidQueryError("perfect_fractional mode needs alpha >= 1/2")
    k = R.k
    top = R.level_graph(k)
    labels = tight_components(top)
    size = floor(alpha * t)
    seed = next((e for e in top.edges if is_excellent(e, R)), None)
    matched = []
    seq = []
    if size > 0:
        if seed is None:
            raise GreedyStuckError("no excellent edge to start from")
        u = _by_part(seed, P)
        matched.append(u)
        seq.extend(u)
        covered = set(u)
        while len(matched) < size:
            u = _excellent_step(R, P, u, covered)
            matched.append(u)
            seq.extend(u)
            covered.update(u)
    walk = None
    comp = -1
    if seq:
        walk = verify_tight(seq, top, require_path=True)
        if not walk:
            raise GreedyStuckError(f"greedy walk leaves the host at window {walk.window}")
        comp = labels.label(seq[:k])
    m = Matching(tuple(canon(e) for e in matched))
    assert m.is_valid(top)
    assert all(labels.label(e) == comp for e in m.edges)
    if mode == "matching":
        return ConnectedMatchingResult(m, walk, comp)
    fm = max_fractional_matching(top)
    return ConnectedMatchingResult(m, walk, comp, fm, labels.count)
