"""Fixture invariants run by ``hyperslice verify``."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import generators as gen
from .compression import fully_compress, is_fully_compressed, ratio_matching
from .core import GroundPartition, KGraph, down_closure, level_counts, local_lym_margin
from .errors import HypothesisViolatedError
from .khg import format_khg, parse_khg
from .matchings import (
    check_farkas_hypothesis,
    matching_number,
    max_fractional_matching,
    partite_connected_matching,
    verify_cover,
)
from .reduced import reduced_entropy, weighted_reduced, WeightedReducedGraph
from .slices import DensityVector, PartitionFamily, enumerate_slices, slice_probability, trivial_slice
from .tight import min_tight_walk, plan_cycle_length, reverse_to_Ws, search_tight, verify_tight


def _walks():
    C6 = gen.tight_cycle(6, 3)
    K4 = gen.complete(4, 3)
    w = min_tight_walk(C6, (0, 1, 2), (3, 4, 5))
    ws = reverse_to_Ws(verify_tight((0, 1, 2, 3), K4))
    ok = (w.length == 4 and ws.vertices == (2, 3, 1, 2, 0, 1) and ws.length == 4
          and plan_cycle_length(3, [2], [3]) == 27)
    return ok, f"walk {w.vertices}, W_s {ws.vertices}"


def _search():
    C6 = gen.tight_cycle(6, 3)
    a = search_tight(C6, "cycle", 6)
    b = search_tight(C6, "cycle", 5)
    c = search_tight(gen.star(6, 3, 1), "longest-path")
    ok = a.status == "found" and b.status == "exhaustive-negative" and c.vertex_count == 5
    return ok, f"{a.status}/{b.status}/{c.vertex_count}"


def _matchings():
    K4 = gen.complete(4, 3)
    fm = max_fractional_matching(K4)
    nu, _ = matching_number(gen.tight_cycle(6, 3))
    ok = fm.weight == Fraction(4, 3) and verify_cover(K4, fm) and nu == 2
    return ok, f"K4 weight {fm.weight}, nu(C6) {nu}"


def _compression():
    res = ratio_matching(down_closure(gen.complete(6, 3)), 2)
    try:
        ratio_matching(down_closure(gen.complete(5, 3)), 2)
        deficit = None
    except HypothesisViolatedError as exc:
        deficit = exc.deficit
    C = down_closure(KGraph(3, 6, [(2, 3, 5), (1, 4, 5)]))
    D = fully_compress(C)
    ok = (res.matching.edges == ((0, 2, 4), (1, 3, 5)) and deficit == 1
          and level_counts(C) == level_counts(D) and is_fully_compressed(D)
          and all(local_lym_margin(D, i) >= 0 for i in range(1, 4)))
    return ok, f"matching {res.matching.edges}, deficit {deficit}"


def _partite():
    P = GroundPartition.consecutive(6, 3)
    R = down_closure(gen.complete_partite((2, 2, 2), 3))
    v = check_farkas_hypothesis(R, P, 2, verify_conclusion=True)
    P4 = GroundPartition.consecutive(12, 3)
    R4 = down_closure(gen.complete_partite((4, 4, 4), 3))
    res = partite_connected_matching(R4, P4, 4, Fraction(1, 2), Fraction(1, 32), "perfect_fractional")
    ok = (v.holds and v.lp_weight == 2 and len(res.matching) == 2
          and res.fractional.weight == 4 and res.component_count == 1)
    return ok, f"LP {v.lp_weight}, matching {res.matching.edges}"


def _slices():
    F = PartitionFamily.random(GroundPartition.consecutive(6, 3), 3,
                               DensityVector(3, {2: Fraction(1, 2)}), seed=0)
    probs = [slice_probability(F, S) for S in enumerate_slices(F)]
    ok = len(probs) == 8 and set(probs) == {Fraction(1, 8)} and sum(probs) == 1
    return ok, f"{len(probs)} slices, total {sum(probs)}"


def _reduced():
    P = GroundPartition.from_parts([[0, 3], [1, 4], [2, 5]])
    R = weighted_reduced(gen.tight_cycle(6, 3), trivial_slice(P, 3))
    half = WeightedReducedGraph(4, 3, {X: Fraction(1, 2) for X in combinations(range(4), 3)})
    ok = R.weight((0, 1, 2)) == Fraction(3, 4) and abs(reduced_entropy(half) - 1.0) < 1e-12
    return ok, f"weight {R.weight((0, 1, 2))}"


def _generators():
    tc = gen.tightness_complex(3, 2)
    nu, _ = matching_number(tc.level_graph(3))
    ok = (len(gen.star(6, 3, 1)) == 10 and len(gen.parity(2, 3, Fraction(1, 2))) == 4
          and len(gen.complete_partite((2, 2, 2), 3)) == 8
          and level_counts(tc)[2:] == (10, 10) and nu == 1)
    return ok, "star, parity, complete partite, tightness"


def _khg():
    G = gen.random_kgraph(7, 3, 0.5, seed=3)
    ok = parse_khg(format_khg(G, ["fixture"])) == G
    return ok, f"{len(G)} edges round-tripped"


CHECKS = [
    ("tight-walks", _walks),
    ("tight-search", _search),
    ("matchings", _matchings),
    ("compression", _compression),
    ("partite-matchings", _partite),
    ("slices", _slices),
    ("reduced-graphs", _reduced),
    ("generators", _generators),
    ("khg-roundtrip", _khg),
]


def run_checks() -> list:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash counts as a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"check": name, "ok": bool(ok), "detail": detail})
    return out
