"""Brute-force reference implementations, written without the library's
algorithms so they can check it."""

from collections import deque
from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np


def edge_set(edges):
    return {tuple(sorted(e)) for e in edges}


def windows_ok(seq, es, k, cyclic):
    L = len(seq)
    if cyclic:
        ws = [[seq[(i + j) % L] for j in range(k)] for i in range(L)]
    else:
        ws = [seq[i:i + k] for i in range(L - k + 1)]
    return all(tuple(sorted(w)) in es and len(set(w)) == k for w in ws)


def has_cycle(edges, n, k, L):
    es = edge_set(edges)
    for S in combinations(range(n), L):
        first = S[0]
        for rest in permutations(S[1:]):
            if windows_ok((first,) + rest, es, k, True):
                return True
    return False


def longest_cycle(edges, n, k):
    for L in range(n, k, -1):
        if has_cycle(edges, n, k, L):
            return L
    return 0


def longest_path(edges, n, k):
    es = edge_set(edges)
    if not es:
        return k - 1
    for L in range(n, k - 1, -1):
        for S in combinations(range(n), L):
            for order in permutations(S):
                if windows_ok(order, es, k, False):
                    return L
    return k - 1


def matching_number(edges):
    edges = sorted(edge_set(edges))
    best = 0
    for r in range(1, len(edges) + 1):
        found = False
        for combo in combinations(edges, r):
            vs = [v for e in combo for v in e]
            if len(vs) == len(set(vs)):
                found = True
                break
        if not found:
            break
        best = r
    return best


def tightly_connected(edges, k, e, f):
    es = sorted(edge_set(edges))
    e, f = tuple(sorted(e)), tuple(sorted(f))
    seen = {e}
    q = deque([e])
    while q:
        a = q.popleft()
        if a == f:
            return True
        for b in es:
            if b not in seen and len(set(a) & set(b)) == k - 1:
                seen.add(b)
                q.append(b)
    return False


def fractional_matching_value(edges, n):
    """Float LP optimum from scipy, used only as an independent cross-check."""
    from scipy.optimize import linprog
    edges = sorted(edge_set(edges))
    if not edges:
        return 0.0
    A = np.array([[1.0 if v in e else 0.0 for e in edges] for v in range(n)])
    res = linprog(-np.ones(len(edges)), A_ub=A, b_ub=np.ones(n), bounds=(0, 1), method="highs")
    return -res.fun


def falsify_brute(H_edges, base_edges, parts_of, d, eps, i):
    """Return the first falsifying subgraph (edge-index set) or None; r = 1."""
    base = sorted(edge_set(base_edges))
    hs = edge_set(H_edges)
    K = _supported_from(base, i, parts_of)
    M = len(K)
    for size in range(len(base) + 1):
        for idx in combinations(range(len(base)), size):
            Q = [base[j] for j in idx]
            KQ = _supported_from(Q, i, parts_of)
            if len(KQ) > eps * M:
                dens = Fraction(len(KQ & hs), len(KQ))
                if abs(dens - d) > eps:
                    return idx, dens
    return None


def _supported_from(base, i, parts_of):
    be = set(base)
    verts = sorted({v for e in be for v in e})
    out = set()
    for S in combinations(verts, i):
        if len({parts_of[v] for v in S}) != i:
            continue
        if all(tuple(x for x in S if x != v) in be for v in S):
            out.add(S)
    return out


def transversal_weight(G_edges, clusters, top_sets):
    """Share of cluster transversals (all facets in top_sets) that are edges."""
    es = edge_set(G_edges)
    K = []
    for Q in product(*clusters):
        Q = tuple(sorted(Q))
        if all(tuple(x for x in Q if x != v) in top_sets for v in Q):
            K.append(Q)
    if not K:
        return Fraction(0)
    return Fraction(sum(1 for Q in K if Q in es), len(K))


def tight_classes(edges, k):
    """Tight components by plain BFS over the overlap relation."""
    es = sorted(edge_set(edges))
    left = set(es)
    out = []
    for e in es:
        if e not in left:
            continue
        left.discard(e)
        comp = [e]
        q = deque([e])
        while q:
            a = q.popleft()
            for b in list(left):
                if len(set(a) & set(b)) == k - 1:
                    left.discard(b)
                    comp.append(b)
                    q.append(b)
        out.append(comp)
    return out


def shadow(edges, size):
    return {s for e in edges for s in combinations(e, size)}


def weighted_h_density(weight, H_edges, h_vertices, domain):
    """Mean over injections of the product of edge weights, by listing them all."""
    total = Fraction(0)
    count = 0
    for img in permutations(domain, h_vertices):
        count += 1
        w = Fraction(1)
        for e in H_edges:
            w *= weight(tuple(sorted(img[v] for v in e)))
        total += w
    return total / count


def has_matching(edges, r):
    """Whether some r edges are pairwise disjoint."""
    edges = sorted(edge_set(edges))
    for combo in combinations(edges, r):
        vs = [v for e in combo for v in e]
        if len(vs) == len(set(vs)):
            return True
    return r == 0
