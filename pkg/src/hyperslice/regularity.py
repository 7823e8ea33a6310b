"""Relative densities and falsification of (d, eps, r)-regularity.

Exact verification quantifies over every subgraph of the base, so the
verdict is three-valued: a concrete falsifying witness, a proof of
regularity (exhaustive mode only), or "not falsified after N trials".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .core import GroundPartition, KGraph, canon, supported_sets
from .errors import CapacityError, InvalidQueryError

DEFAULT_EXHAUSTIVE_CAP = 20
# Unions of r clique sets are enumerated only up to this many combinations.
MAX_UNION_COMBOS = 2_000_000


@dataclass(frozen=True)
class RegularityParams:
    d: Fraction | None
    eps: Fraction
    eps_k: Fraction | None = None
    r: int = 1

    def __post_init__(self):
        if not 0 < self.eps <= 1:
            raise InvalidQueryError("eps must lie in (0, 1]")
        if self.eps_k is not None and not 0 < self.eps_k <= 1:
            raise InvalidQueryError("eps_k must lie in (0, 1]")
        if self.r < 1:
            raise InvalidQueryError("r must be at least 1")


@dataclass(frozen=True)
class Falsified:
    witness: tuple          # one or more subgraphs of the base
    density: object         # Fraction, or (low, high) when no target d is given
    kind: str = "falsified"


@dataclass(frozen=True)
class ExactlyRegular:
    kind: str = "exactly-regular"


@dataclass(frozen=True)
class NotFalsified:
    trials: int
    kind: str = "not-falsified"


def _bases(base) -> list:
    if isinstance(base, KGraph):
        return [base]
    base = list(base)
    if not base:
        raise InvalidQueryError("need at least one base graph")
    return base


def cliques(base, i: int, partition: GroundPartition | None = None) -> set:
    """``K_i`` of a base graph or the union over a tuple of base graphs."""
    out = set()
    for b in _bases(base):
        out.update(supported_sets(b, i, partition).edges)
    return out


def relative_density(H: KGraph, base, partition: GroundPartition | None = None) -> Fraction:
    """Share of ``K_i(base)`` that are edges of ``H``; zero when ``K_i(base)`` is empty."""
    K = cliques(base, H.k, partition)
    if not K:
        return Fraction(0)
    hs = H.edge_set
    return Fraction(sum(1 for c in K if c in hs), len(K))


def _edge_key(mask: int, size: int):
    bits = tuple(b for b in range(size) if mask >> b & 1)
    return (len(bits), bits)


def _as_graph(base: KGraph, mask: int) -> KGraph:
    return KGraph(base.k, base.n, (e for b, e in enumerate(base.edges) if mask >> b & 1))


def regularity_falsify(H: KGraph, base: KGraph, params: RegularityParams,
                       mode: str = "exhaustive", trials: int = 1000, seed=0,
                       partition: GroundPartition | None = None,
                       cap: int = DEFAULT_EXHAUSTIVE_CAP):
    """Look for subgraphs ``Q_1..Q_r`` of ``base`` that break regularity of ``H``.

    A tuple qualifies when ``|K_i(Q)| > eps |K_i(base)|``; it falsifies when
    its relative density is not within ``eps`` of ``params.d``. With
    ``params.d = None`` the test is existential: it falsifies when two
    qualifying densities differ by more than ``2 eps``.

    ``mode`` is ``"exhaustive"`` (all ``2^e(base)`` subgraphs, needs
    ``e(base) <= cap``) or ``"sampled"`` (``trials`` random tuples drawn from
    vertex-induced, random-edge and link-derived subgraphs).
    """
    if H.k != base.k + 1:
        raise InvalidQueryError("H must have uniformity one more than the base")
    if mode == "exhaustive":
        return _exhaustive(H, base, params, partition, cap)
    if mode == "sampled":
        return _sampled(H, base, params, partition, trials, seed)
    raise InvalidQueryError(f"unknown mode {mode!r}")


def _clique_table(H, base, partition):
    K = sorted(cliques(base, H.k, partition))
    index = {e: b for b, e in enumerate(base.edges)}
    masks = []
    for c in K:
        m = 0
        for j in range(len(c)):
            m |= 1 << index[c[:j] + c[j + 1:]]
        masks.append(m)
    hs = H.edge_set
    in_h = [c in hs for c in K]
    return K, masks, in_h


def _exhaustive(H, base, params, partition, cap):
    e = len(base)
    if e > cap:
        raise CapacityError(f"base has {e} edges, exhaustive cap is {cap}")
    K, masks, in_h = _clique_table(H, base, partition)
    M = len(K)
    eps = Fraction(params.eps)
    if M == 0:
        return ExactlyRegular()
    Q = np.arange(1 << e, dtype=np.int64)
    sup = np.empty((M, Q.size), dtype=bool)
    for c, m in enumerate(masks):
        sup[c] = (Q & m) == m
    if params.r == 1:
        count = sup.sum(axis=0)
        hits = sup[np.array(in_h)].sum(axis=0) if any(in_h) else np.zeros(Q.size, dtype=np.int64)
        return _judge_single(base, Q, count, hits, M, params, eps)
    return _judge_unions(base, Q, sup, in_h, M, params, eps)


def _qualifies(count, M, eps):
    # count > eps * M, in integers
    return count * eps.denominator > eps.numerator * M


def _judge_single(base, Q, count, hits, M, params, eps):
    e = len(base)
    qual = _qualifies(count, M, eps)
    if not qual.any():
        return ExactlyRegular()
    if params.d is not None:
        d = Fraction(params.d)
        # |hits/count - d| > eps  <=>  |hits*dq - dp*count| * eq > ep * count * dq
        diff = np.abs(hits * d.denominator - d.numerator * count)
        bad = qual & (diff * eps.denominator > eps.numerator * count * d.denominator)
        idx = np.flatnonzero(bad)
        if idx.size == 0:
            return ExactlyRegular()
        q = min((int(i) for i in idx), key=lambda i: _edge_key(i, e))
        return Falsified((_as_graph(base, q),), Fraction(int(hits[q]), int(count[q])))
    hq, cq = hits[qual], count[qual]
    dens = {Fraction(int(h), int(c)) for h, c in set(zip(hq.tolist(), cq.tolist()))}
    lo, hi = min(dens), max(dens)
    if hi - lo > 2 * eps:
        wit = []
        for f in (lo, hi):
            idx = np.flatnonzero(qual & (hits * f.denominator == count * f.numerator))
            q = min((int(i) for i in idx), key=lambda i: _edge_key(i, e))
            wit.append(_as_graph(base, q))
        return Falsified(tuple(wit), (lo, hi))
    return ExactlyRegular()


def _judge_unions(base, Q, sup, in_h, M, params, eps):
    e = len(base)
    if M > 62:
        raise CapacityError("too many cliques for union enumeration")
    weights = (np.int64(1) << np.arange(M, dtype=np.int64))
    pattern = (sup.T.astype(np.int64) * weights).sum(axis=1)
    reps = {}
    for i in sorted(range(Q.size), key=lambda i: _edge_key(i, e)):
        p = int(pattern[i])
        if p and p not in reps:
            reps[p] = i
    pats = list(reps)
    total = sum(comb(len(pats), s) for s in range(1, params.r + 1))
    if total > MAX_UNION_COMBOS:
        raise CapacityError(f"{total} unions of clique sets exceed the enumeration cap")
    hmask = sum(1 << c for c in range(M) if in_h[c])
    lo = hi = None
    for s in range(1, params.r + 1):
        for combo in combinations(pats, s):
            u = 0
            for p in combo:
                u |= p
            count = bin(u).count("1")
            if not count * eps.denominator > eps.numerator * M:
                continue
            dens = Fraction(bin(u & hmask).count("1"), count)
            wit = tuple(_as_graph(base, reps[p]) for p in combo)
            if params.d is not None:
                if abs(dens - Fraction(params.d)) > eps:
                    return Falsified(wit, dens)
            else:
                if lo is None or dens < lo[0]:
                    lo = (dens, wit)
                if hi is None or dens > hi[0]:
                    hi = (dens, wit)
    if params.d is None and lo is not None and hi[0] - lo[0] > 2 * eps:
        return Falsified(lo[1] + hi[1], (lo[0], hi[0]))
    return ExactlyRegular()


def _sampled(H, base, params, partition, trials, seed):
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    K = cliques(base, H.k, partition)
    M = len(K)
    eps = Fraction(params.eps)
    if M == 0:
        return NotFalsified(trials)
    hs = H.edge_set
    bedges = list(base.edges)
    verts = sorted({v for b in bedges for v in b})
    lo = hi = None
    for _ in range(trials):
        Qs = []
        for _ in range(params.r):
            kind = int(rng.integers(3))
            if kind == 0:
                keep = {v for v in verts if rng.random() < 0.5}
                chosen = [b for b in bedges if keep.issuperset(b)]
            elif kind == 1:
                flags = rng.random(len(bedges)) < 0.5
                chosen = [b for b, f in zip(bedges, flags) if f]
            else:
                v = int(rng.integers(H.n))
                chosen = [b for b in bedges if v not in b and canon(b + (v,)) in hs]
            Qs.append(KGraph(base.k, base.n, chosen))
        sup = cliques(Qs, H.k, partition)
        count = len(sup)
        if not count * eps.denominator > eps.numerator * M:
            continue
        dens = Fraction(sum(1 for c in sup if c in hs), count)
        if params.d is not None:
            if abs(dens - Fraction(params.d)) > eps:
                return Falsified(tuple(Qs), dens)
        else:
            if lo is None or dens < lo[0]:
                lo = (dens, tuple(Qs))
            if hi is None or dens > hi[0]:
                hi = (dens, tuple(Qs))
            if hi[0] - lo[0] > 2 * eps:
                return Falsified(lo[1] + hi[1], (lo[0], hi[0]))
    return NotFalsified(trials)
