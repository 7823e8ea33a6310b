"""Deterministic constructions and seeded random k-graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np

from .core import Complex, GroundPartition, KGraph, down_closure, level_counts


def complete(n: int, k: int) -> KGraph:
    _check_nk(n, k)
    return KGraph(k, n, combinations(range(n), k))


def complete_partite(sizes, k: int) -> KGraph:
    """Edges meeting ``k`` distinct classes (consecutive blocks of the given sizes)."""
    sizes = list(sizes)
    if len(sizes) < k or any(s < 0 for s in sizes):
        raise ValueError(f"need at least {k} non-negative class sizes")
    P = _blocks(sizes)
    edges = []
    for A in combinations(range(len(sizes)), k):
        edges.extend(product(*(P.parts[a] for a in A)))
    return KGraph(k, sum(sizes), edges)


def star(n: int, k: int, a: int) -> KGraph:
    """Edges meeting ``A = {0, ..., a-1}``."""
    _check_nk(n, k)
    if not 0 <= a <= n:
        raise ValueError("need 0 <= a <= n")
    return KGraph(k, n, (e for e in combinations(range(n), k) if e[0] < a))


def clique_plus(n: int, k: int, a: int, r: int) -> KGraph:
    """Edges inside ``A = {0..a-1}`` or with at least ``r`` vertices in the rest."""
    _check_nk(n, k)
    if not 0 <= a <= n or not 0 <= r <= k:
        raise ValueError("need 0 <= a <= n and 0 <= r <= k")
    out = []
    for e in combinations(range(n), k):
        outside = sum(1 for v in e if v >= a)
        if outside == 0 or outside >= r:
            out.append(e)
    return KGraph(k, n, out)


def parity_split(n_per_part: int, k: int, alpha) -> list:
    """For each part, the pair ``(V_i^0, V_i^1)``; ``V_i^0`` is the first ``(1-alpha) n`` vertices."""
    alpha = Fraction(alpha)
    small = alpha * n_per_part
    if small.denominator != 1 or not 0 <= alpha <= 1:
        raise ValueError("alpha * n_per_part must be an integer in [0, n_per_part]")
    big = n_per_part - int(small)
    split = []
    for i in range(k):
        part = list(range(i * n_per_part, (i + 1) * n_per_part))
        split.append((tuple(part[:big]), tuple(part[big:])))
    return split


def parity(n_per_part: int, k: int, alpha) -> KGraph:
    """Transversals whose side indices ``j_1 + ... + j_k`` are odd."""
    split = parity_split(n_per_part, k, alpha)
    edges = []
    for js in product((0, 1), repeat=k):
        if sum(js) % 2:
            edges.extend(product(*(split[i][j] for i, j in enumerate(js))))
    return KGraph(k, k * n_per_part, edges)


def tight_cycle(length: int, k: int) -> KGraph:
    if length < k + 1:
        raise ValueError(f"a tight cycle needs at least {k + 1} vertices")
    return KGraph(k, length, ((tuple((i + j) % length for j in range(k)))
                              for i in range(length)))


def tight_path(v: int, k: int) -> KGraph:
    if v < k - 1:
        raise ValueError(f"a tight path needs at least {k - 1} vertices")
    return KGraph(k, v, (tuple(range(i, i + k)) for i in range(v - k + 1)))


def random_kgraph(n: int, k: int, p, seed=0) -> KGraph:
    """Each ``k``-set kept independently with probability ``p``."""
    _check_nk(n, k)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    sets = list(combinations(range(n), k))
    keep = rng.random(len(sets)) < p
    return KGraph(k, n, (e for e, f in zip(sets, keep) if f))


def tightness_complex(k: int, r: int) -> Complex:
    """Down-closure of the complete ``k``-graph on ``k r - 1`` vertices.

    Its top level has exactly ``(r-1)`` times as many edges as the level below.
    """
    if k < 2 or r < 1:
        raise ValueError("need k >= 2 and r >= 1")
    n = k * r - 1
    C = down_closure(complete(n, k))
    if C.is_empty():
        C = Complex(n, k, ())
    counts = level_counts(C)
    assert counts[k] == comb(n, k)
    assert counts[k] == (r - 1) * counts[k - 1] or counts[k] == 0
    return C


def _check_nk(n, k):
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")


def _blocks(sizes) -> GroundPartition:
    assignment = []
    for pid, s in enumerate(sizes):
        assignment.extend([pid] * s)
    return GroundPartition(assignment, len(sizes))


@dataclass
class Construction:
    graph: KGraph
    name: str
    params: dict
    partition: GroundPartition | None = None
    meta: dict = field(default_factory=dict)


def construct(name: str, **params) -> Construction:
    """Build a named construction, carrying its partition where it has one."""
    if name == "complete":
        return Construction(complete(params["n"], params["k"]), name, params)
    if name == "complete_partite":
        sizes = list(params["sizes"])
        return Construction(complete_partite(sizes, params["k"]), name, params, _blocks(sizes))
    if name == "star":
        g = star(params["n"], params["k"], params["a"])
        return Construction(g, name, params, meta={"A": list(range(params["a"]))})
    if name == "clique_plus":
        g = clique_plus(params["n"], params["k"], params["a"], params["r"])
        return Construction(g, name, params, meta={"A": list(range(params["a"]))})
    if name == "parity":
        npp, k, alpha = params["n_per_part"], params["k"], params["alpha"]
        split = parity_split(npp, k, alpha)
        meta = {"V0": [list(s[0]) for s in split], "V1": [list(s[1]) for s in split]}
        return Construction(parity(npp, k, alpha), name, params,
                            GroundPartition.consecutive(k * npp, k), meta)
    if name == "tight_cycle":
        return Construction(tight_cycle(params["length"], params["k"]), name, params)
    if name == "tight_path":
        return Construction(tight_path(params["v"], params["k"]), name, params)
    if name == "random":
        g = random_kgraph(params["n"], params["k"], params["p"], params.get("seed", 0))
        return Construction(g, name, params)
    raise ValueError(f"unknown construction {name!r}")
