"""Tight walks, paths and cycles; tight components; walk planning.

A host is anything exposing ``k``, ``n`` and ``has_edge(vertices)``, so the
same routines serve an input k-graph and a thresholded reduced graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence

from .core import KGraph, canon
from .errors import (
    BoundViolationError,
    InvalidQueryError,
    NotTightlyConnectedError,
    TupleMismatchError,
    WalkTotalError,
)


@dataclass(frozen=True)
class TightWalk:
    host: object = field(repr=False, compare=False)
    vertices: tuple
    cyclic: bool = False

    @property
    def k(self) -> int:
        return self.host.k

    @property
    def length(self) -> int:
        """Number of windows (edges) traversed."""
        if self.cyclic:
            return len(self.vertices)
        return len(self.vertices) - self.k + 1

    @property
    def initial(self) -> tuple:
        return self.vertices[: self.k - 1]

    @property
    def terminal(self) -> tuple:
        return self.vertices[len(self.vertices) - self.k + 1:]

    def windows(self):
        k, vs = self.k, self.vertices
        if self.cyclic:
            L = len(vs)
            return [tuple(vs[(i + j) % L] for j in range(k)) for i in range(L)]
        return [vs[i:i + k] for i in range(len(vs) - k + 1)]

    def edges(self):
        return [canon(w) for w in self.windows()]

    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)


@dataclass(frozen=True)
class Violation:
    """First window of a vertex sequence that is not a host edge."""

    index: int
    window: tuple

    def __bool__(self):
        return False


def _min_cycle(k, given):
    if given is None:
        return k + 1
    if given < k + 1:
        raise InvalidQueryError(f"minimum cycle length {given} is below k + 1 = {k + 1}")
    return given


def verify_tight(seq: Sequence[int], G, cyclic: bool = False,
                 require_path: bool = False, min_cycle_length: int | None = None):
    """Validate ``seq`` as a tight walk/path/cycle of ``G``.

    Returns a :class:`TightWalk`, or a falsy :class:`Violation` naming the
    first window that is not an edge.
    """
    seq = tuple(int(v) for v in seq)
    k = G.k
    for v in seq:
        if not 0 <= v < G.n:
            raise InvalidQueryError(f"vertex {v} outside 0..{G.n - 1}")
    if cyclic:
        min_cycle_length = _min_cycle(k, min_cycle_length)
        if len(seq) < min_cycle_length:
            raise InvalidQueryError(
                f"a tight cycle needs at least {min_cycle_length} vertices")
        if len(set(seq)) != len(seq):
            raise InvalidQueryError("a tight cycle cannot repeat a vertex")
    else:
        if len(seq) < k - 1:
            raise InvalidQueryError(f"a tight walk needs at least {k - 1} vertices")
        if require_path and len(set(seq)) != len(seq):
            raise InvalidQueryError("a tight path cannot repeat a vertex")
    walk = TightWalk(G, seq, cyclic)
    for i, w in enumerate(walk.windows()):
        if len(set(w)) != k or not G.has_edge(w):
            return Violation(i, w)
    return walk


# -- tight components ---------------------------------------------------

class _DisjointSet:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


@dataclass(frozen=True)
class TightComponentLabels:
    labels: dict
    count: int

    def label(self, e) -> int:
        return self.labels[canon(e)]

    def members(self, cid: int) -> list:
        return sorted(e for e, c in self.labels.items() if c == cid)

    def components(self) -> list:
        out = [[] for _ in range(self.count)]
        for e, c in sorted(self.labels.items()):
            out[c].append(e)
        return out


def tight_components(G: KGraph) -> TightComponentLabels:
    """Label edges by tight component (union over shared (k-1)-subsets).

    Component ids follow the order of each component's smallest edge.
    """
    edges = G.edges
    dsu = _DisjointSet(len(edges))
    first_owner = {}
    for idx, e in enumerate(edges):
        for sub in combinations(e, G.k - 1):
            if sub in first_owner:
                dsu.union(first_owner[sub], idx)
            else:
                first_owner[sub] = idx
    ids = {}
    labels = {}
    for idx, e in enumerate(edges):
        root = dsu.find(idx)
        if root not in ids:
            ids[root] = len(ids)
        labels[e] = ids[root]
    return TightComponentLabels(labels, len(ids))


def _extension_table(G) -> dict:
    """Sorted (k-1)-set -> sorted vertices completing it to an edge."""
    table = {}
    for e in G.edges:
        for j in range(len(e)):
            sub = e[:j] + e[j + 1:]
            table.setdefault(sub, []).append(e[j])
    for key in table:
        table[key].sort()
    return table


# -- walk algebra -------------------------------------------------------

def min_tight_walk(G: KGraph, e, f) -> TightWalk:
    """Shortest tight walk starting with the vertices of ``e``, ending with those of ``f``.

    Breadth-first search over ordered (k-1)-tuples; ties are broken
    lexicographically.
    """
    e, f = canon(e), canon(f)
    if not G.has_edge(e) or not G.has_edge(f):
        raise InvalidQueryError("both endpoints must be edges of the host")
    k = G.k
    if e == f:
        return TightWalk(G, e)
    table = _extension_table(G)
    fset = set(f)
    parent = {}
    queue = deque()
    for p in permutations(e):
        state = p[1:]
        if state not in parent:
            parent[state] = (None, p)
            queue.append(state)
    while queue:
        state = queue.popleft()
        for v in table.get(canon(state), ()):
            if v in state:
                continue
            if set(state) | {v} == fset:
                return TightWalk(G, _rebuild(parent, state) + (v,))
            nxt = state[1:] + (v,)
            if nxt not in parent:
                parent[nxt] = (state, v)
                queue.append(nxt)
    raise NotTightlyConnectedError(f"{e} and {f} lie in different tight components")


def _rebuild(parent, state):
    tail = []
    while True:
        prev, item = parent[state]
        if prev is None:
            return item + tuple(reversed(tail))
        tail.append(item)
        state = prev


def concatenate(W: TightWalk, W2: TightWalk) -> TightWalk:
    """``W + W2``: the shared (k-1)-tuple appears once; lengths add."""
    if W.cyclic or W2.cyclic:
        raise InvalidQueryError("only open walks can be concatenated")
    if W.host is not W2.host and W.host != W2.host:
        raise InvalidQueryError("walks live in different hosts")
    if W.terminal != W2.initial:
        raise TupleMismatchError(
            f"terminal tuple {W.terminal} differs from initial tuple {W2.initial}")
    return TightWalk(W.host, W.vertices + W2.vertices[W.k - 1:])


def reverse_to_Ws(W: TightWalk) -> TightWalk:
    """Walk back from the terminal (k-1)-tuple of ``W`` to its initial one.

    Writes down the (k-1)-tuples of ``W`` from last to first, each in its own
    order; the result has length ``(k-1) * W.length``.
    """
    k = W.k
    vs = W.vertices
    count = len(vs) - k + 2
    out = []
    for j in range(count - 1, -1, -1):
        out.extend(vs[j:j + k - 1])
    walk = verify_tight(out, W.host)
    if not walk:
        raise AssertionError(f"reversal produced a non-edge window {walk.window}")
    return walk


def plan_cycle_length(k: int, n_i: Sequence[int], walk_lengths: Sequence[int],
                      alpha=None, weights=None, m=None) -> int:
    """Cycle length produced by the fill-and-traverse plan.

    ``(3 + sum n_i) * k + (sum walk_lengths) * (k + 1)``. When ``alpha``,
    ``weights`` and ``m`` are all given, each ``n_i`` is checked against
    ``(1 - 3 alpha) w_i m``.
    """
    if any(x < 0 for x in n_i):
        raise InvalidQueryError("fill counts must be non-negative")
    total_walk = sum(walk_lengths)
    if total_walk % k:
        raise WalkTotalError(f"total walk length {total_walk} is not divisible by {k}")
    if alpha is not None and weights is not None and m is not None:
        if len(weights) != len(n_i):
            raise InvalidQueryError("need one weight per fill count")
        for i, (count, w) in enumerate(zip(n_i, weights)):
            bound = (1 - 3 * alpha) * w * m
            if count > bound:
                raise BoundViolationError(f"n_{i + 1} = {count} exceeds {bound}")
    length = (3 + sum(n_i)) * k + total_walk * (k + 1)
    assert length % k == 0
    return length


# -- backtracking search ------------------------------------------------

@dataclass
class SearchResult:
    status: str  # "found" | "exhaustive-negative" | "budget-exhausted"
    witness: TightWalk | None
    expansions: int

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def vertex_count(self) -> int:
        return len(self.witness.vertices) if self.witness is not None else 0


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, G, budget):
        self.G = G
        self.k = G.k
        self.table = _extension_table(G)
        self.budget = budget
        self.expansions = 0

    def tick(self):
        self.expansions += 1
        if self.budget is not None and self.expansions > self.budget:
            raise _Budget

    def closes(self, path):
        k, L = self.k, len(path)
        for i in range(L - k + 1, L):
            window = [path[(i + j) % L] for j in range(k)]
            if not self.G.has_edge(window):
                return False
        return True

    def cycle_seeds(self, s):
        """Ordered first k vertices of cycles whose smallest vertex is ``s``."""
        for e in self.G.edges:
            if e[0] != s:
                continue
            for rest in permutations(e[1:]):
                yield (s,) + rest

    def cycles(self, lengths, want_longest):
        """DFS over cycles; returns best path found (as list) or None."""
        n, k = self.G.n, self.k
        best = None
        targets = set(lengths)
        top = max(targets) if targets else 0
        for s in range(n):
            if n - s < min(targets, default=n + 1):
                break
            for seed in self.cycle_seeds(s):
                self.tick()
                path = list(seed)
                used = set(path)
                found = self._extend_cycle(path, used, s, targets, top, want_longest, best)
                if found is not None:
                    if not want_longest:
                        return found
                    if best is None or len(found) > len(best):
                        best = found
                        if len(best) == top:
                            return best
        return best

    def _extend_cycle(self, path, used, s, targets, top, want_longest, best):
        k = self.k
        local_best = None
        if len(path) in targets and self.closes(path):
            if not want_longest:
                return list(path)
            local_best = list(path)
            if len(path) == top:
                return local_best
        if len(path) >= top:
            return local_best
        floor = len(best) if best is not None else 0
        if local_best is not None:
            floor = max(floor, len(local_best))
        # remaining vertices above s that are free
        avail = self.G.n - s - len(path)
        if want_longest and len(path) + avail <= floor:
            return local_best
        for v in self.table.get(canon(path[-(k - 1):]) if k > 1 else (), ()):
            if v <= s or v in used:
                continue
            self.tick()
            path.append(v)
            used.add(v)
            got = self._extend_cycle(path, used, s, targets, top, want_longest,
                                     best if local_best is None or (best is not None and len(best) >= len(local_best)) else local_best)
            path.pop()
            used.discard(v)
            if got is not None:
                if not want_longest:
                    return got
                if local_best is None or len(got) > len(local_best):
                    local_best = got
                    if len(local_best) == top:
                        return local_best
        return local_best

    def longest_path(self):
        n, k = self.G.n, self.k
        best = list(range(min(k - 1, n)))
        if not self.G.edges:
            return best
        for e in self.G.edges:
            for order in permutations(e):
                self.tick()
                path = list(order)
                got = self._extend_path(path, set(path), len(best))
                if got is not None and len(got) > len(best):
                    best = got
                    if len(best) == n:
                        return best
        return best

    def _extend_path(self, path, used, floor):
        k, n = self.k, self.G.n
        best = list(path) if len(path) > floor else None
        if len(path) == n:
            return best
        for v in self.table.get(canon(path[-(k - 1):]) if k > 1 else (), ()):
            if v in used:
                continue
            self.tick()
            path.append(v)
            used.add(v)
            cur = max(floor, len(best) if best else 0)
            got = self._extend_path(path, used, cur)
            path.pop()
            used.discard(v)
            if got is not None and (best is None or len(got) > len(best)):
                best = got
                if len(best) == n:
                    return best
        return best


def search_tight(G, goal: str, length: int | None = None, budget: int | None = None,
                 min_cycle_length: int | None = None) -> SearchResult:
    """Backtracking search for tight cycles and paths.

    ``goal`` is ``"cycle"`` (exact ``length`` vertices), ``"longest-cycle"`` or
    ``"longest-path"``. ``budget`` caps node expansions; running out yields
    status ``"budget-exhausted"`` (carrying the best witness so far for the
    longest-* goals). Cycles start at their smallest vertex and branch in
    increasing vertex order, so witnesses are deterministic.
    """
    k = G.k
    min_cycle_length = _min_cycle(k, min_cycle_length)
    searcher = _Searcher(G, budget)
    best = None
    status = "found"
    try:
        if goal == "cycle":
            if length is None:
                raise InvalidQueryError("goal 'cycle' needs a length")
            if length < min_cycle_length:
                raise InvalidQueryError(
                    f"cycle length {length} below the minimum {min_cycle_length}")
            if length <= G.n:
                best = searcher.cycles([length], want_longest=False)
        elif goal == "longest-cycle":
            lengths = range(min_cycle_length, G.n + 1)
            best = searcher.cycles(list(lengths), want_longest=True)
        elif goal == "longest-path":
            best = searcher.longest_path()
        else:
            raise InvalidQueryError(f"unknown goal {goal!r}")
    except _Budget:
        status = "budget-exhausted"
    if status == "found" and best is None:
        status = "exhaustive-negative"
    witness = None
    if best is not None:
        witness = verify_tight(best, G, cyclic=goal != "longest-path",
                               require_path=True, min_cycle_length=min_cycle_length)
        if not witness:
            raise AssertionError(f"search produced an invalid witness {best}")
    return SearchResult(status, witness, searcher.expansions)
