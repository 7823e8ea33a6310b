"""
Matchings, fractional matchings and compression
================================================
"""

from fractions import Fraction

from hyperslice import generators as gen
from hyperslice.compression import densest_component, ratio_matching
from hyperslice.core import GroundPartition, down_closure, level_counts
from hyperslice.matchings import (
    matching_number,
    max_fractional_matching,
    partite_connected_matching,
)

K4 = gen.complete(4, 3)
print("nu(K4) =", matching_number(K4)[0])
fm = max_fractional_matching(K4)
# every vertex gets 1/3 in the cover, which certifies the optimum
print("fractional nu(K4) =", fm.weight, "cover", [str(c) for c in fm.cover])

for m in (2, 3, 4):
    print(f"C_{3 * m}:", max_fractional_matching(gen.tight_cycle(3 * m, 3)).weight)

# K_8 is exactly at the ratio threshold for r = 3 and still has 2 disjoint edges only
K = gen.tightness_complex(3, 3)
print("K_8 levels", level_counts(K), "nu", matching_number(K.level_graph(3))[0])

# one more edge than the ratio needs forces r disjoint edges
C = down_closure(gen.complete(9, 3))
res = ratio_matching(C, 3)
print("ratio matching in K_9:", res.matching.edges, "oracle nu", res.oracle_nu)
print("steps in the prune/compress trace:", len(res.trace))

# some tight component is at least as dense as the whole graph
G = gen.random_kgraph(9, 3, 0.3, seed=4)
best = densest_component(G)
print("densest component", best.component, "top", best.top, "shadow", best.lower)

# a tightly connected matching inside the complete partite complex
t = 6
P = GroundPartition.consecutive(3 * t, 3)
R = down_closure(gen.complete_partite((t, t, t), 3))
out = partite_connected_matching(R, P, t, Fraction(1, 2), Fraction(1, 32), "perfect_fractional")
print("connected matching", out.matching.edges)
print("walk through it", out.walk.vertices if out.walk else None)
print("LP weight", out.fractional.weight, "components", out.component_count)
