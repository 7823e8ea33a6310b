"""Acceptance criteria, one test each.

Every test records a PASS or FAIL line; the lines are printed in the
terminal summary (see conftest.py) and when this file is run as a script.
Expected values come from the brute-force oracles in ``oracles.py``, not
from the library.
"""

import time
from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb, floor, sqrt

import numpy as np

import oracles
from hyperslice.compression import compress_ij, densest_component, fully_compress, ratio_matching
from hyperslice.core import Complex, GroundPartition, KGraph, down_closure, level_counts, local_lym_margin
from hyperslice.errors import WalkTotalError
from hyperslice.generators import (
    complete,
    complete_partite,
    parity,
    random_kgraph,
    star,
    tight_cycle,
    tightness_complex,
)
from hyperslice.lp import check_certificate, solve_packing
from hyperslice.matchings import (
    check_farkas_hypothesis,
    max_fractional_matching,
    partite_connected_matching,
    verify_cover,
)
from hyperslice.reduced import (
    WeightedReducedGraph,
    binary_entropy,
    d_reduced,
    reduced_entropy,
    reduced_inequality_slacks,
    regularity_verdicts,
    weighted_reduced,
)
from hyperslice.regularity import Falsified, RegularityParams
from hyperslice.slices import (
    DensityVector,
    PartitionFamily,
    enumerate_slices,
    generated_from_check,
    random_refinement,
    sample_slice,
    slice_probability,
    subset_density_test,
)
from hyperslice.tight import concatenate, min_tight_walk, plan_cycle_length, reverse_to_Ws, \
    search_tight, verify_tight

RESULTS = []


def record(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def random_complex(rng, n_lo=4, n_hi=9, k=3, p_lo=0.2):
    """Down-closure of a random k-graph plus a few stray lower sets."""
    n = int(rng.integers(n_lo, n_hi + 1))
    G = random_kgraph(n, k, float(rng.uniform(p_lo, 1.0)), rng)
    edges = set(down_closure(G).edges()) | {()} | {(v,) for v in range(n)}
    for size in range(2, k):
        for s in combinations(range(n), size):
            if rng.random() < 0.05:
                edges.add(s)
    return Complex(n, k, edges)


def shifted(C):
    # independent statement of the fixpoint predicate: j in e, i < j outside e => shift in C
    have = set(C.edges())
    for e in have:
        for j in e:
            for i in range(j):
                if i not in e and tuple(sorted(set(e) - {j} | {i})) not in have:
                    return False
    return True


def test_tightness_complex():
    t0 = time.perf_counter()
    bad = []
    for r in (1, 2, 3):
        C = tightness_complex(3, r)
        e3, e2 = level_counts(C)[3], level_counts(C)[2]
        nu = oracles.matching_number(C.level(3))
        if e3 != (r - 1) * e2 or nu != r - 1:
            bad.append((r, e3, e2, nu))
    dt = time.perf_counter() - t0
    record("tightness complex K_(3r-1)^(3), r=1..3", not bad and dt < 5,
           f"bad={bad}, {dt:.2f}s")


def test_ratio_matching_constructive():
    rng = np.random.default_rng(20240501)
    t0 = time.perf_counter()
    done = failures = 0
    tried = 0
    by_r = Counter()
    while done < 200:
        tried += 1
        r = int(rng.integers(1, 4))
        # larger r needs near-complete graphs on more vertices
        C = random_complex(rng, *{1: (4, 9, 3, 0.2), 2: (6, 9, 3, 0.6), 3: (8, 9, 3, 0.85)}[r])
        counts = level_counts(C)
        if counts[3] < (r - 1) * counts[2] + 1:
            continue
        res = ratio_matching(C, r, oracle=False)
        M = res.matching.edges
        top = set(res.compressed.level(3))
        verts = [v for e in M for v in e]
        ok = len(M) >= r and len(verts) == len(set(verts)) and all(e in top for e in M)
        ok = ok and oracles.has_matching(C.level(3), r)
        failures += not ok
        done += 1
        by_r[r] += 1
    dt = time.perf_counter() - t0
    record("ratio matching on 200 random complexes (k=3, n<=9, r<=3)",
           failures == 0 and dt < 60,
           f"{failures} failures, r counts {dict(sorted(by_r.items()))}, {dt:.1f}s")


def test_densest_component():
    rng = np.random.default_rng(51)
    bad = 0
    for _ in range(100):
        n = int(rng.integers(4, 11))
        G = random_kgraph(n, 3, float(rng.uniform(0.05, 0.6)), rng)
        if not G.edges:
            continue
        target = Fraction(len(G), comb(n, 2))
        ok = any(len(c) >= len(oracles.shadow(c, 2)) * target
                 for c in oracles.tight_classes(G.edges, 3))
        best = densest_component(G)
        bad += not (ok and best is not None and best.satisfies(G))
    record("densest tight component on 100 random 3-graphs (n<=10)", bad == 0, f"{bad} failures")


def test_compression():
    rng = np.random.default_rng(77)
    bad = Counter()
    for _ in range(200):
        C = random_complex(rng, 4, 8)
        base = level_counts(C)
        nu0 = oracles.matching_number(C.level(3))
        D = C
        for i, j in combinations(range(C.n), 2):
            E = compress_ij(D, i, j)
            bad["counts"] += level_counts(E) != base
            bad["nu"] += oracles.matching_number(E.level(3)) > oracles.matching_number(D.level(3))
            D = E
        F = fully_compress(C)
        bad["counts"] += level_counts(F) != base
        bad["nu"] += oracles.matching_number(F.level(3)) > nu0
        bad["fixpoint"] += not shifted(F)
        bad["lym"] += any(local_lym_margin(C, i) < 0 for i in range(1, 4))
        bad["lym"] += any(local_lym_margin(F, i) < 0 for i in range(1, 4))
    record("compression on 200 random complexes: counts, matching number, fixpoint, LYM",
           sum(bad.values()) == 0, dict(bad) or "no failures")


def test_fractional_matching():
    detail = []
    ok = True
    for m in (1, 2, 3, 4):
        # for m = 1 the cycle on 3 vertices degenerates to a single edge
        G = KGraph(3, 3, [(0, 1, 2)]) if m == 1 else tight_cycle(3 * m, 3)
        fm = max_fractional_matching(G)
        ok &= fm.weight == m and fm.is_perfect and verify_cover(G, fm)
        ok &= abs(oracles.fractional_matching_value(G.edges, G.n) - m) < 1e-9
        detail.append(f"C_{3 * m}={fm.weight}")
    K4 = complete(4, 3)
    fm = max_fractional_matching(K4)
    A = [[1 if v in e else 0 for e in K4.edges] for v in range(4)]
    sol = solve_packing(A, [1] * 4, [1] * len(K4))
    cover_ok = sum(fm.cover) == Fraction(4, 3) and all(
        sum(fm.cover[v] for v in e) >= 1 for e in K4.edges) and min(fm.cover) >= 0
    ok &= fm.weight == Fraction(4, 3) and sol.value == Fraction(4, 3)
    ok &= check_certificate(A, [1] * 4, [1] * len(K4), sol) and cover_ok
    detail.append(f"K4={fm.weight}")
    record("fractional matchings: C_3m perfect, K_4^(3) = 4/3 with dual certificate", ok,
           ", ".join(detail))


def test_farkas_instances():
    rng = np.random.default_rng(61)
    found = failures = tried = 0
    while found < 50 and tried < 5000:
        tried += 1
        t = int(rng.integers(1, 5))
        P = GroundPartition.consecutive(3 * t, 3)
        full = down_closure(complete_partite((t, t, t), 3))
        q3, q2 = float(rng.uniform(0, 0.5)), float(rng.uniform(0, 0.2))
        drop2 = {e for e in full.level(2) if rng.random() < q2}
        edges = [e for e in full.edges()
                 if not (len(e) == 3 and (rng.random() < q3 or any(s in drop2 for s in combinations(e, 2))))
                 and e not in drop2]
        C = Complex(3 * t, 3, edges)
        if not check_farkas_hypothesis(C, P, t).holds:
            continue
        found += 1
        fm = max_fractional_matching(C.level_graph(3))
        lp = oracles.fractional_matching_value(C.level(3), 3 * t)
        failures += not (fm.weight == t and abs(lp - t) < 1e-9)
    record("perfect fractional matching on 50 partite complexes meeting the degree hypothesis",
           found == 50 and failures == 0, f"{found} instances from {tried} draws, {failures} failures")


def test_connected_matching():
    half, beta = Fraction(1, 2), Fraction(1, 32)
    detail = []
    ok = True
    for t in (3, 4, 5, 6):
        P = GroundPartition.consecutive(3 * t, 3)
        R = down_closure(complete_partite((t, t, t), 3))
        res = partite_connected_matching(R, P, t, half, beta)
        M = res.matching.edges
        top = set(R.level(3))
        verts = [v for e in M for v in e]
        good = len(M) == floor(t / 2) and len(verts) == len(set(verts)) and all(e in top for e in M)
        good &= all(oracles.tightly_connected(R.level(3), 3, M[0], e) for e in M)
        res_b = partite_connected_matching(R, P, t, half, beta, "perfect_fractional")
        good &= res_b.fractional.weight == t and res_b.fractional.is_perfect
        good &= len(oracles.tight_classes(R.level(3), 3)) == 1 and res_b.component_count == 1
        ok &= good
        detail.append(f"t={t}:{len(M)}")
    record("tightly connected matching in complete 3-partite complexes, t=3..6, alpha=1/2",
           ok, ", ".join(detail))


def test_slice_algorithm():
    P = GroundPartition.consecutive(6, 3)
    F = PartitionFamily.random(P, 3, DensityVector(3, {2: Fraction(1, 2)}), seed=3)
    slices = list(enumerate_slices(F))
    probs = [slice_probability(F, S) for S in slices]
    exact = len(slices) == 8 and all(p == Fraction(1, 8) for p in probs) and sum(probs) == 1
    n = 10_000
    rng = np.random.default_rng(2024)
    freq = Counter()
    for _ in range(n):
        S = sample_slice(F, rng)
        for A, v in S.labels[2].items():
            freq[A, v] += 1
    sd = sqrt(n * 0.5 * 0.5)
    worst = max(abs(c - n / 2) / sd for c in freq.values())
    record("slice enumeration and sampling, k=3, t=3, 1/d_2=2",
           exact and len(freq) == 6 and worst <= 3,
           f"{len(slices)} slices, sum={sum(probs)}, worst label deviation {worst:.2f} sigma")


def random_walk_from(G, start, steps, rng):
    seq = list(start)
    k = G.k
    for _ in range(steps):
        tail = seq[-(k - 1):]
        options = [v for v in range(G.n) if v not in tail and G.has_edge(tail + [v])]
        if not options:
            break
        seq.append(int(rng.choice(options)))
    return seq


def test_walk_algebra():
    rng = np.random.default_rng(8)
    checked = bad = 0
    tries = 0
    while checked < 100 and tries < 2000:
        tries += 1
        P = GroundPartition([v % 6 for v in range(12)], 6)
        G = random_kgraph(12, 3, float(rng.uniform(0.3, 0.8)), rng)
        F = PartitionFamily.random(P, 3, DensityVector(3, {2: Fraction(1, int(rng.integers(1, 3)))}), rng)
        S = sample_slice(F, rng)
        Rd = weighted_reduced(G, S).threshold(Fraction(1, 4))
        if len(Rd) < 2:
            continue
        e, f = (Rd.edges[i] for i in rng.choice(len(Rd), 2, replace=False))
        if not oracles.tightly_connected(Rd.edges, 3, e, f):
            continue
        W = min_tight_walk(Rd, e, f)
        W2 = verify_tight(random_walk_from(Rd, list(W.terminal), int(rng.integers(0, 6)), rng), Rd)
        Ws = reverse_to_Ws(W)
        ok = bool(W2) and concatenate(W, W2).length == W.length + W2.length
        ok &= Ws.length == (3 - 1) * W.length and Ws.initial == W.terminal and Ws.terminal == W.initial
        ok &= concatenate(W, Ws).length == W.length + Ws.length
        ok &= oracles.windows_ok(concatenate(W, Ws).vertices, set(Rd.edges), 3, False)
        bad += not ok
        checked += 1
    plan_bad = 0
    for _ in range(500):
        k = int(rng.integers(2, 6))
        n_i = rng.integers(0, 20, size=int(rng.integers(1, 5))).tolist()
        walks = rng.integers(0, 15, size=int(rng.integers(1, 5))).tolist()
        walks[-1] += (-sum(walks)) % k
        plan_bad += plan_cycle_length(k, n_i, walks) % k != 0
        # a walk total off by one from a multiple of k is refused
        try:
            plan_cycle_length(k, n_i, walks[:-1] + [walks[-1] + 1])
            plan_bad += 1
        except WalkTotalError:
            pass
    record("walk algebra on reduced-graph walks; planned cycle lengths divisible by k",
           checked == 100 and bad == 0 and plan_bad == 0,
           f"{checked} walks, {bad} failures, {plan_bad} plan failures")


def test_constructions():
    bad = []
    for n in range(3, 10):
        for a in range(1, n + 1):
            res = search_tight(star(n, 3, a), "longest-path")
            if res.status == "budget-exhausted" or res.vertex_count != min(n, 3 * a + 2):
                bad.append(("star", n, a, res.vertex_count))
    for npp, alpha in [(1, 0), (1, 1), (2, 0), (2, Fraction(1, 2)), (2, 1),
                       (3, 0), (3, Fraction(1, 3)), (3, Fraction(2, 3)), (3, 1)]:
        G = parity(npp, 3, alpha)
        res = search_tight(G, "longest-cycle")
        if res.status == "budget-exhausted" or res.vertex_count > 3 * alpha * npp:
            bad.append(("parity", npp, alpha, res.vertex_count))
    for npp in (1, 2, 3):
        G = complete_partite((npp,) * 3, 3)
        for L in range(4, 3 * npp + 1):
            if L % 3 == 0:
                continue
            res = search_tight(G, "cycle", length=L)
            if res.status != "exhaustive-negative" or oracles.has_cycle(G.edges, G.n, 3, L):
                bad.append(("partite", npp, L, res.status))
    record("star, parity and complete partite constructions by exhaustive search", not bad,
           f"bad={bad}" if bad else "all cases exact")


def test_reduced_inequalities():
    rng = np.random.default_rng(99)
    H_list = [KGraph(3, 3, [(0, 1, 2)]), KGraph(3, 4, [(0, 1, 2), (1, 2, 3)]),
              KGraph(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])]
    Ys = [Y for j in (1, 2) for Y in combinations(range(4), j)]
    bad = 0
    low = None
    for trial in range(100):
        P = GroundPartition.consecutive(8, 4)
        G = random_kgraph(8, 3, float(rng.uniform(0.1, 0.9)), rng)
        F = PartitionFamily.random(P, 3, DensityVector(3, {2: Fraction(1, int(rng.integers(1, 3)))}), rng)
        S = sample_slice(F, rng)
        d = Fraction(int(rng.integers(1, 10)), 10)
        eps_k = Fraction(1, 10)
        V = regularity_verdicts(G, S, eps_k, seed=trial)
        irregular = {X for X, v in V.items() if isinstance(v, Falsified)}
        R = weighted_reduced(G, S)
        Rd = d_reduced(G, S, RegularityParams(d, eps_k), verdicts=V)
        rd = Rd.edge_set
        charged = max(eps_k * comb(4, 3), Fraction(len(irregular)))
        for X in ([0, 1, 2, 3], [0, 1, 2], [1, 2, 3]):
            for H in H_list:
                if H.n > len(X):
                    continue
                # independent sides of the density inequality
                lhs = oracles.weighted_h_density(lambda e: 1 if e in rd else 0, H.edges, H.n, X)
                rhs = oracles.weighted_h_density(R.weight, H.edges, H.n, X) - d \
                    - charged * len(H) / comb(len(X), 3)
                s = reduced_inequality_slacks(R, Rd, irregular, d, eps_k, H, X,
                                              [Y for Y in Ys if comb(len(set(X) - set(Y)), 3 - len(Y))])
                bad += lhs - rhs < 0 or s["density"] != lhs - rhs
                for Y, slack in s["degrees"].items():
                    ext = [tuple(sorted(Y + z)) for z in combinations(sorted(set(X) - set(Y)), 3 - len(Y))]
                    a = Fraction(sum(1 for Z in ext if Z in rd), len(ext))
                    b = sum((R.weight(Z) for Z in ext), Fraction(0)) / len(ext)
                    zeta = Fraction(sum(1 for Z in ext if Z in irregular), len(ext))
                    bad += a - (b - d - zeta) < 0 or slack != a - (b - d - zeta)
                    low = slack if low is None else min(low, slack)
    record("reduced-graph inequalities on 100 random (G, slice, d) triples, n=8, t=4",
           bad == 0, f"{bad} violations, smallest degree slack {low}")


def test_entropy():
    half = WeightedReducedGraph(5, 3, {X: Fraction(1, 2) for X in combinations(range(5), 3)})
    ends = WeightedReducedGraph(5, 3, {X: Fraction(i % 2) for i, X in enumerate(combinations(range(5), 3))})
    e1, e0 = reduced_entropy(half), reduced_entropy(ends)
    ok = abs(e1 - 1.0) <= 1e-12 and abs(e0) <= 1e-12
    ok &= binary_entropy(0) == 0.0 and binary_entropy(1) == 0.0
    record("reduced-graph entropy closed forms", ok, f"all-1/2 -> {e1!r}, all-0/1 -> {e0!r}")


def test_refinement_and_subset_density():
    rng = np.random.default_rng(5)
    rows = []
    ok = True
    for i in range(20):
        n1 = int(rng.choice([32, 64, 96]))
        n2 = int(rng.integers(8, 33))
        p = int(rng.choice([1, 2, 4]))
        dens = float(rng.uniform(0.1, 0.9))
        keep = rng.random(n1 * n2) < dens
        B = KGraph(2, n1 + n2, ((u, n1 + v) for (u, v), f in
                                zip(((u, v) for u in range(n1) for v in range(n2)), keep) if f))
        st = subset_density_test(B, [range(n1), range(n1, n1 + n2)], p, 0.2, 2000, seed=i)
        ok &= st.passes
        rows.append(st.frequency - st.bound)
    P = GroundPartition.consecutive(12, 3)
    F = PartitionFamily.random(P, 4, DensityVector(4, {2: Fraction(1, 2), 3: Fraction(1, 3)}), seed=1)
    F1 = random_refinement(F, 1, seed=7)
    ok &= F1 == F and generated_from_check(F1, F)
    F2 = random_refinement(F, 2, seed=7)
    ok &= generated_from_check(F2, F)
    record("random refinement: 20 subset-density instances, identity at p=1", ok,
           f"min frequency minus bound {min(rows):.3f}")


if __name__ == "__main__":
    import sys
    fails = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                fails += 1
    sys.exit(1 if fails else 0)
