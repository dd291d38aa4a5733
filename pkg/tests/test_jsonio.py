import json

import numpy as np
import pytest

from fusionrings import ade_ring, find_isomorphisms, load_ring, ring_from_dict, ring_to_dict
from fusionrings.errors import RingFormatError
from fusionrings.jsonio import dump_ring, load_partial, partial_from_dict, partial_to_dict


def test_ring_round_trip(e4, tmp_path):
    path = tmp_path / "ring.json"
    dump_ring(e4, path)
    back = load_ring(path)
    assert back.labels == e4.labels
    assert back.unit == e4.unit
    assert list(back.dual) == list(e4.dual)
    assert np.array_equal(back.tensor, e4.tensor)
    assert back.grading == e4.grading


def test_extra_keys_tolerated(e4):
    data = ring_to_dict(e4)
    data["provenance"] = {"anything": True}
    back = ring_from_dict(data)
    assert np.array_equal(back.tensor, e4.tensor)


def test_grading_optional():
    a3 = ade_ring("A", 3)
    data = ring_to_dict(a3)
    del data["grading"]
    back = ring_from_dict(data)
    assert back.grading is None
    assert find_isomorphisms(back, a3)


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("labels"), "labels"),
    (lambda d: d.__setitem__("labels", ["f0", "f0", "f1"]), "distinct"),
    (lambda d: d.__setitem__("unit", "zz"), "unit"),
    (lambda d: d.__setitem__("rank", 99), "rank"),
    (lambda d: d.pop("dual"), "dual"),
    (lambda d: d["dual"].append(["f0", "f2"]), "dual"),
    (lambda d: d["tensor"].append(["f0", "f0", "zz", 1]), "zz"),
    (lambda d: d["grading"].__setitem__("orders", [0]), "orders"),
    (lambda d: d["grading"]["deg"].pop(), "degree"),
])
def test_format_errors(mutate, fragment):
    data = ring_to_dict(ade_ring("A", 3))
    mutate(data)
    with pytest.raises(RingFormatError) as err:
        ring_from_dict(data)
    assert fragment in str(err.value)


def test_partial_round_trip(tmp_path):
    from conftest import data_path

    partial = load_partial(data_path("e4_partial.json"))
    assert partial.rank == 12
    assert partial.dual is None and partial.known == {}

    data = partial_to_dict(partial)
    again = partial_from_dict(data)
    assert again.labels == partial.labels
    np.testing.assert_allclose(again.dims, partial.dims)


def test_known_zero_vs_unknown():
    data = {
        "labels": ["e", "x"], "unit": "e",
        "dual": [["e", "e"], ["x", "x"]],
        "dims": [["e", 1.0], ["x", 1.0]],
        "grading": {"orders": [2], "deg": [["e", [0]], ["x", [1]]]},
        "known": [["x", "x", "x", 0]],
    }
    partial = partial_from_dict(data)
    # the explicit zero is a known entry; everything else stays unknown
    assert partial.known == {(1, 1, 1): 0}
