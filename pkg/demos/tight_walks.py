"""
Tight walks and tight components
================================

Builds a few small 3-graphs, splits them into tight components, and walks
between edges.
"""

from hyperslice import generators as gen
from hyperslice.core import KGraph
from hyperslice.tight import (
    concatenate,
    min_tight_walk,
    reverse_to_Ws,
    search_tight,
    tight_components,
)

# the tight cycle on 6 vertices is one component
C6 = gen.tight_cycle(6, 3)
print("C6 components:", tight_components(C6).count)

# two triangles glued at a vertex share no pair, so they stay apart
bow = KGraph(3, 5, [(0, 1, 2), (0, 3, 4)])
print("bowtie components:", tight_components(bow).components())

# shortest walk from the first edge to the one opposite it
W = min_tight_walk(C6, (0, 1, 2), (3, 4, 5))
print("walk", W.vertices, "length", W.length)

# walking back over the same pairs costs (k-1) times as much
Ws = reverse_to_Ws(W)
print("reversed", Ws.vertices, "length", Ws.length)
loop = concatenate(W, Ws)
print("there and back", loop.vertices, "length", loop.length)

# the star around one vertex has no tight path longer than 3a + 2 vertices
for a in (1, 2):
    res = search_tight(gen.star(9, 3, a), "longest-path")
    print(f"star(9,3,{a}): longest tight path has {res.vertex_count} vertices")

# complete 3-partite graphs only carry cycles whose length is a multiple of 3
K333 = gen.complete_partite((3, 3, 3), 3)
for L in range(4, 10):
    print(L, search_tight(K333, "cycle", length=L).status)
