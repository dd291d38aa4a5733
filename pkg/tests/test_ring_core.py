import math

import numpy as np
import pytest

from fusionrings import (
    Digraph,
    FiniteAbelianGroup,
    FusionRing,
    ade_ring,
    adjoint_subring,
    decompose_word,
    digraph_iso,
    dynkin,
    find_isomorphisms,
    fp_dims,
    fusion_graph,
    invertibles,
    is_generator,
    is_k_normal,
    pointed_ring,
    quantum_integer,
    subring_generated,
    universal_grading,
    verify_axioms,
)
from fusionrings.errors import MalformedRingError


def test_a_series_dims_are_quantum_integers(a5):
    assert verify_axioms(a5).ok
    d = fp_dims(a5)
    expected = [quantum_integer(m, 6) for m in range(1, 6)]
    np.testing.assert_allclose(d.tolist(), expected, atol=1e-8)
    assert d.residual < 1e-6
    assert abs(d.total - sum(x * x for x in expected)) < 1e-6


def test_axiom_violations_are_detected(a5):
    t = a5.tensor.copy()
    t[1, 1, 2] += 1  # breaks f1 (x) f1 = f0 + f2
    broken = FusionRing(a5.labels, a5.unit, a5.dual, t, a5.grading)
    report = verify_axioms(broken)
    assert not report.ok
    kinds = {kind for kind, _ in report.violations}
    assert "associativity" in kinds or "frobenius" in kinds


def test_malformed_dual_rejected(a5):
    with pytest.raises(MalformedRingError):
        FusionRing(a5.labels, a5.unit, [0, 1, 2, 3, 3], a5.tensor)


def test_pointed_ring_is_its_group():
    ring = pointed_ring(FiniteAbelianGroup((6,)))
    assert ring.rank == 6
    report = invertibles(ring)
    assert report.order == 6 and report.group == FiniteAbelianGroup.cyclic(6)
    assert universal_grading(ring).group == FiniteAbelianGroup.cyclic(6)
    np.testing.assert_allclose(fp_dims(ring).tolist(), [1.0] * 6)


def test_invertibles_of_a_series(a5):
    report = invertibles(a5)
    assert [a5.labels[i] for i in report.indices] == ["f0", "f4"]
    assert report.group == FiniteAbelianGroup.cyclic(2)


def test_adjoint_and_generation():
    a7 = ade_ring("A", 7)
    adj = adjoint_subring(a7)
    assert [a7.labels[i] for i in adj] == ["f0", "f2", "f4", "f6"]
    assert universal_grading(a7).group == FiniteAbelianGroup.cyclic(2)
    assert is_generator(a7, a7.labels.index("f1"))
    assert not is_generator(a7, a7.labels.index("f2"))
    assert set(subring_generated(a7, [a7.labels.index("f2")])) == set(adj)


def test_k_normality(e4, a5):
    # a commutative ring is 1-normal at every object
    report = is_k_normal(a5, 1, k_max=4)
    assert report.least == 1
    # the rank-12 Z_4-graded ring is strictly 2-normal at its generator
    report = is_k_normal(e4, e4.labels.index("5"), k_max=6)
    assert report.least == 2
    assert report.equal_at[1] is False
    assert str(report) == "K=2 (horizon 6); k=1 fails"


def test_fusion_graph_and_figure(e4):
    from conftest import load_json

    g = fusion_graph(e4, e4.labels.index("5"))
    assert (g.n, g.edge_count) == (12, 20)
    fig = load_json("e4_generator_graph.json")
    target = Digraph.from_edge_list(
        fig["nodes"], [(a - 1, b - 1) for a, b in fig["edges"]])
    assert digraph_iso(g, target)


def test_find_isomorphisms(a5):
    autos = find_isomorphisms(a5, a5)
    # the A_5 diagram flip f_i -> f_{4-i} is the one nontrivial symmetry
    assert len(autos) == 2
    assert not find_isomorphisms(a5, ade_ring("A", 7))


def test_decompose_word():
    a3 = ade_ring("A", 3)
    word = decompose_word(a3, [1, 1])  # f1 (x) f1 = f0 + f2
    assert word[0] == 1 and word[2] == 1 and word[1] == 0


def test_dynkin_shapes():
    a4 = dynkin("A", 4)
    assert a4.shape == (4, 4) and a4.sum() == 6
    d4 = dynkin("D", 4)
    assert sorted(d4.sum(axis=0).tolist()) == [1, 1, 1, 3]
    assert dynkin("E8").shape == (8, 8)
    with pytest.raises(Exception):
        dynkin("F", 4)


def test_digraph_helpers():
    path = Digraph.from_adjacency(dynkin("A", 4))
    star = Digraph.from_adjacency(dynkin("D", 4))
    assert not digraph_iso(path, star)
    doubled = Digraph.from_edge_list(2, [(0, 1), (0, 1)])
    assert doubled.edges[(0, 1)] == 2 and doubled.edge_count == 2
    dot = path.to_dot(labels=["a", "b", "c", "d"])
    assert dot.startswith("digraph") and '"a" -> "b"' in dot
