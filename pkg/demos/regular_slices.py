"""
Slices through a family of partitions
=====================================

A family labels every partite pair of vertices; a slice picks one label per
pair of clusters. The reduced graph then records how dense G is on each
triple of clusters.
"""

import json
from collections import Counter
from fractions import Fraction

from hyperslice import generators as gen
from hyperslice.core import GroundPartition
from hyperslice.reduced import (
    d_reduced,
    reduced_entropy,
    slice_quality_report,
    weighted_reduced,
)
from hyperslice.regularity import RegularityParams
from hyperslice.slices import (
    DensityVector,
    PartitionFamily,
    enumerate_slices,
    sample_slice,
    slice_probability,
)

P = GroundPartition.consecutive(12, 4)
F = PartitionFamily.random(P, 3, DensityVector(3, {2: Fraction(1, 2)}), seed=0)

slices = list(enumerate_slices(F))
print(len(slices), "slices, each with probability", slice_probability(F, slices[0]))

# empirical check of uniformity
seen = Counter(sample_slice(F, s) for s in range(4000))
print("most and least common:", max(seen.values()), min(seen.values()), "expected", 4000 / 64)

G = gen.random_kgraph(12, 3, 0.5, seed=1)
S = sample_slice(F, 7)
R = weighted_reduced(G, S)
print("weights:", {k: str(v) for k, v in R.weights.items()})
print("entropy of R:", round(reduced_entropy(R), 4))

Rd = d_reduced(G, S, RegularityParams(Fraction(1, 3), Fraction(1, 5)))
print("d-reduced edges at d=1/3:", Rd.edges)

edge = gen.complete(3, 3)
rep = slice_quality_report(G, S, [edge], [0, 1, 2, 3], d=Fraction(1, 3), eps_k=Fraction(1, 5))
print(json.dumps({k: rep[k] for k in ("irregular_fraction", "h_densities", "reduced_slacks")}, indent=1))
