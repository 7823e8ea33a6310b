from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import sqrt

import pytest

from hyperslice.core import GroundPartition, KGraph
from hyperslice.errors import ForeignSliceError, InvalidQueryError
from hyperslice.generators import complete_partite, random_kgraph
from hyperslice.slices import (
    DensityVector,
    PartitionFamily,
    Slice,
    enumerate_slices,
    generated_from_check,
    partite_sets,
    random_refinement,
    sample_slice,
    slice_probability,
    subset_density_test,
    trivial_slice,
)


def family(t=3, m=2, cells=2, seed=0, k=3):
    P = GroundPartition.consecutive(t * m, t)
    dv = DensityVector(k, {i: Fraction(1, cells) for i in range(2, k)})
    return PartitionFamily.random(P, k, dv, seed)


def test_density_vector():
    assert DensityVector(4, {2: Fraction(1, 3)}).cells(3) == 1
    with pytest.raises(InvalidQueryError):
        DensityVector(3, {2: Fraction(2, 3)})
    with pytest.raises(InvalidQueryError):
        DensityVector(3, {5: Fraction(1, 2)})


def test_numcell_structural():
    # labels on a polyad never leave 1..1/d_i; with enough sets every one is used
    F = family(t=3, m=2, cells=3, k=4)
    for i in (2, 3):
        seen = F.cells_on_polyad(i)
        assert seen and all(s <= {1, 2, 3} for s in seen.values())
    F = family(t=3, m=5, cells=3, k=3)
    seen = F.cells_on_polyad(2)
    assert len(seen) == 3 and all(s == {1, 2, 3} for s in seen.values())


def test_cell_refines():
    F = family(t=3, m=2, cells=2, k=4)
    for Q in partite_sets(F.ground, 3):
        facets, label = F.cell(Q)
        assert facets == tuple(F.cell(Q[:j] + Q[j + 1:]) for j in range(3))
        assert label == F.label(Q)


def test_sample_slice_deterministic():
    F = family()
    assert sample_slice(F, 5) == sample_slice(F, 5)
    S = sample_slice(F, 5)
    assert S in set(enumerate_slices(F))


def test_trivial_slice_unique():
    P = GroundPartition.consecutive(6, 3)
    F = PartitionFamily.trivial(P, 3)
    slices = list(enumerate_slices(F))
    assert len(slices) == 1 and slices[0] == trivial_slice(P, 3)
    assert slice_probability(F, slices[0]) == 1


def test_slice_probability_examples():
    F = family(t=4, m=1)
    S = sample_slice(F, 0)
    assert slice_probability(F, S) == Fraction(1, 64)
    for t, cells in ((3, 2), (3, 3), (4, 2), (4, 3)):
        F = family(t=t, m=1, cells=cells)
        assert sum(slice_probability(F, S) for S in enumerate_slices(F)) == 1


def test_foreign_slice():
    F, G = family(seed=0), family(seed=1)
    with pytest.raises(ForeignSliceError):
        slice_probability(G, sample_slice(F, 0))
    with pytest.raises(ForeignSliceError):
        slice_probability(F, Slice(F, {2: {(0, 1): 1}}))


def test_slice_complex_invariants():
    F = family(t=4, m=2, cells=2, k=4)
    S = sample_slice(F, 3)
    C = S.complex()
    assert C.is_down_closed()
    assert all(F.ground.is_partite(e) for e in C.edges())
    assert all(S.contains(e) for e in S.top())


def test_sample_frequencies_uniform():
    F = family()
    n = 10_000
    from numpy.random import default_rng
    rng = default_rng(11)
    freq = Counter()
    for _ in range(n):
        S = sample_slice(F, rng)
        for A, v in S.labels[2].items():
            freq[A, v] += 1
    sd = sqrt(n * 0.25)
    assert all(abs(c - n / 2) <= 3 * sd for c in freq.values())


def test_json_shapes():
    F = family(t=3, m=1)
    S = sample_slice(F, 0)
    js = S.to_json()
    assert js["ground"] == [[0], [1], [2]] and js["densities"] == {"2": "1/2"}
    assert set(js["labels"]) == {"0,1", "0,2", "1,2"}


def test_refinement_identity():
    F = family(t=3, m=2)
    F1 = random_refinement(F, 1, seed=4)
    assert F1 == F and generated_from_check(F1, F)


def test_refinement_nested():
    F = family(t=3, m=4, k=4)
    Ff = random_refinement(F, 2, seed=2)
    assert Ff.t == 6 and Ff.ground.equal_size
    assert generated_from_check(Ff, F)
    for Q, v in F.labels[2].items():
        assert Ff.label(Q) == v
    with pytest.raises(InvalidQueryError):
        random_refinement(F, 3)


def test_generated_from_detects_mismatch():
    F = family(t=2, m=2, cells=2, seed=0)
    other = family(t=2, m=2, cells=2, seed=0)
    Q = next(iter(other.labels[2]))
    labels = {2: dict(other.labels[2])}
    labels[2][Q] = 3 - labels[2][Q]
    G = PartitionFamily(other.ground, 3, other.densities, labels)
    assert generated_from_check(F, F)
    assert not generated_from_check(G, F) or not generated_from_check(F, G)


def test_subset_density_complete():
    B = complete_partite((8, 8), 2)
    st = subset_density_test(B, [range(8), range(8, 16)], 2, 0.1, 200, seed=0)
    assert st.frequency == 1.0 and st.density == 1.0 and st.passes


def test_subset_density_errors():
    B = complete_partite((6, 6), 2)
    with pytest.raises(InvalidQueryError):
        subset_density_test(B, [range(6), range(6, 12)], 4, 0.1, 10)
    with pytest.raises(InvalidQueryError):
        subset_density_test(KGraph(2, 12, [(0, 1)]), [range(6), range(6, 12)], 2, 0.1, 10)
