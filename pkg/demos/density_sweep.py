"""
Longest tight cycle against edge density
========================================

Small random 3-graphs at increasing density, with the longest tight cycle
found by exhaustive search. Desk-scale only: nothing here is asymptotic.
"""

import numpy as np

from hyperslice.generators import random_kgraph
from hyperslice.tight import search_tight

n, k = 8, 3
rng = np.random.default_rng(3)
print("p     mean_edges  mean_longest  max_longest")
for p in np.linspace(0.2, 1.0, 5):
    lengths, edges = [], []
    for _ in range(6):
        G = random_kgraph(n, k, p, rng)
        res = search_tight(G, "longest-cycle")
        lengths.append(res.vertex_count)
        edges.append(len(G))
    print(f"{p:.2f}  {np.mean(edges):10.1f}  {np.mean(lengths):12.2f}  {max(lengths):11d}")
