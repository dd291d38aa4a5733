import numpy as np
import pytest

from fusionrings import (
    PartialRing,
    ade_ring,
    complete_partial_ring,
    dynkin,
    find_isomorphisms,
    fp_dims,
    ring_from_generator_graph,
    unique_ring_from_graph,
    verify_axioms,
)
from fusionrings.errors import (
    MalformedRingError,
    NoSolutionError,
    SearchCapExceededError,
)
from conftest import data_path


def _e4_partial():
    from fusionrings.jsonio import load_partial

    return load_partial(data_path("e4_partial.json"))


def test_forgotten_entries_are_recovered(a5):
    forget = [(1, 1, 0), (1, 1, 2), (2, 2, 0), (1, 2, 3)]
    partial = PartialRing.from_ring(a5, forget=forget)
    result = complete_partial_ring(partial)
    reps = result.class_representatives()
    assert len(reps) == 1
    assert find_isomorphisms(reps[0], a5)
    for ring in result:
        assert verify_axioms(ring).ok


def test_e4_completion_counts():
    result = complete_partial_ring(_e4_partial())
    assert len(result.solutions) == 4
    assert len(result.classes) == 1
    for ring in result:
        assert verify_axioms(ring).ok


def test_search_cap():
    with pytest.raises(SearchCapExceededError):
        complete_partial_ring(_e4_partial(), search_cap=1)


def test_no_solution_for_bad_dims():
    from fusionrings.ring import Grading

    # a rank-2 ring with a non-unit of dimension 1.3 cannot close up
    partial = PartialRing(["e", "x"], 0, [1.0, 1.3], Grading((1,), [(0,), (0,)]))
    with pytest.raises(NoSolutionError):
        complete_partial_ring(partial)


def test_ring_from_generator_graph_a_series(a5):
    rings = ring_from_generator_graph(dynkin("A", 5))
    assert rings
    assert all(find_isomorphisms(r, a5) for r in rings)

    ring = unique_ring_from_graph(dynkin("A", 5), labels=list(a5.labels))
    assert ring.labels == a5.labels
    assert find_isomorphisms(ring, a5)


def test_generator_graph_needs_unique_neighbor():
    d4 = dynkin("D", 4)
    hub = int(np.argmax(d4.sum(axis=0)))  # three neighbors
    with pytest.raises(MalformedRingError):
        ring_from_generator_graph(d4, unit=hub)


def test_d_series_from_graph():
    d6 = ade_ring("D", 6)
    ring = unique_ring_from_graph(dynkin("D", 6))
    assert find_isomorphisms(ring, d6)
    np.testing.assert_allclose(sorted(fp_dims(ring)), sorted(fp_dims(d6)), atol=1e-8)
