"""Acceptance checks, one per criterion; each prints a single verdict line.

Run as ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines
alongside the pytest outcomes.
"""

import math
from collections import Counter
from contextlib import contextmanager

import numpy as np

from fusionrings import (
    FiniteAbelianGroup,
    FusionRing,
    ade_ring,
    audit_all,
    bp_catalog,
    brute_force_h2,
    deligne_product,
    dequiv_free,
    digraph_iso,
    e4_ring,
    e166_ring,
    find_isomorphisms,
    fp_dims,
    fusion_graph,
    h3_roots_of_unity,
    h_cyclic,
    invertibles,
    is_k_normal,
    load_partial,
    one_one_subring,
    pointed_ring,
    separation_check,
    theorem_row,
    universal_grading,
)
from fusionrings.cohomology import parse_action
from fusionrings.construct import ROWS
from fusionrings.errors import InvalidActionError
from fusionrings.graphs import Digraph
from fusionrings.ring import Grading
from fusionrings.solve import PartialRing, complete_partial_ring
from conftest import data_path, load_json

TOL = 1e-4


@contextmanager
def criterion(n, name):
    try:
        yield
    except BaseException:
        print("criterion %d (%s): FAIL" % (n, name))
        raise
    print("criterion %d (%s): PASS" % (n, name))


def _fixture_digraph(name):
    fig = load_json(name)
    return Digraph.from_edge_list(
        fig["nodes"], [(a - 1, b - 1) for a, b in fig["edges"]])


def test_criterion_1_bimodule_dimension_profiles():
    printed = {
        ("adD", 10, "E7_even"): [1.96962, 3.70167, 4.98724, 5.67128],
        ("adD", 10, "E7_odd"): [2.53209, 3.87939, 7.29086],
        ("adE6", None, "E_even"): [1, 2.73205],
        ("adE6", None, "E_odd"): [1.93185],
        ("adE8", None, "E_even"): [1, 1.61803, 2.9563, 4.78339],
        ("adE8", None, "E_odd"): [1.98904, 2.40487, 3.21834, 3.89116],
    }
    with criterion(1, "bimodule dimension profiles"):
        for (family, size, bid), values in printed.items():
            dims = bp_catalog(family, size).bimodule(bid).dims
            for v in values:
                assert any(abs(d - v) < TOL for d in dims), (bid, v, dims)


def test_criterion_2_e4_reconstruction():
    with criterion(2, "e4 reconstruction"):
        e4 = e4_ring()
        result = complete_partial_ring(load_partial(data_path("e4_partial.json")))
        assert len(result.solutions) == 4
        assert len(result.classes) == 1
        rep = result.class_representatives()[0]
        assert find_isomorphisms(rep, e4, max_count=1)

        autos = find_isomorphisms(e4, e4)
        assert len(autos) == 4
        for swaps in ([(4, 5), (9, 10)],
                      [(1, 2), (4, 9), (5, 10), (6, 11)],
                      [(1, 2), (4, 10), (5, 9), (6, 11)]):
            perm = list(range(12))
            for a, b in swaps:
                perm[a], perm[b] = perm[b], perm[a]
            assert tuple(perm) in autos

        five = e4.labels.index("5")
        assert abs(float(fp_dims(e4)[five]) - math.sqrt(2 + math.sqrt(2))) < TOL
        assert digraph_iso(fusion_graph(e4, five),
                           _fixture_digraph("e4_generator_graph.json"))
        kn = is_k_normal(e4, five, k_max=8)
        assert kn.least == 2 and not kn.equal_at[1]


def test_criterion_3_e166_reconstruction():
    with criterion(3, "e166 reconstruction"):
        e = e166_ring()
        d10 = ade_ring("D", 10)
        assert list(e.labels[:10]) == list(d10.labels)
        known = {}
        for i in range(10):
            for j in range(10):
                for k in range(24):
                    known[(i, j, k)] = int(d10.tensor[i, j, k]) if k < 10 else 0
        deg = [(0,)] * 10 + [(1,)] * 7 + [(2,)] * 7
        partial = PartialRing(list(e.labels), 0, [float(x) for x in fp_dims(e)],
                              Grading((3,), deg), known=known)
        result = complete_partial_ring(partial)
        assert len(result.classes) == 1
        rep = result.class_representatives()[0]
        assert rep.rank == 24
        assert find_isomorphisms(rep, e, max_count=1)

        a0 = e.labels.index("a0")
        assert abs(float(fp_dims(e)[a0]) - 2 * math.cos(math.pi / 18)) < TOL
        assert digraph_iso(fusion_graph(e, a0),
                           _fixture_digraph("e166_generator_graph.json"))
        kn = is_k_normal(e, a0, k_max=8)
        assert kn.least == 2 and not kn.equal_at[1]


def test_criterion_4_cohomology_table():
    with criterion(4, "cyclic-group cohomology table"):
        z2 = FiniteAbelianGroup((2,))
        z22 = FiniteAbelianGroup((2, 2))
        z33 = FiniteAbelianGroup((3, 3))
        for m in range(1, 25):
            want = FiniteAbelianGroup((2,) if m % 2 == 0 else ())
            assert h_cyclic(2, m, z2) == want

            action = parse_action("swap", m, (2, 2))
            if m % 2 == 0:
                want = FiniteAbelianGroup((2,) if m % 4 == 0 else ())
                assert h_cyclic(2, m, z22, action) == want

            action = parse_action("inv2", m, (3, 3))
            if m % 2 == 0:
                want = FiniteAbelianGroup((3,) if m % 6 == 0 else ())
                assert h_cyclic(2, m, z33, action) == want

            assert h3_roots_of_unity(m) == FiniteAbelianGroup.cyclic(m)

        cases = [((2,), "trivial"), ((3,), "trivial"), ((2, 2), "trivial"),
                 ((2, 2), "swap"), ((3, 3), "inv2"), ((3, 3), "inv")]
        for m in range(1, 7):
            for orders, spec in cases:
                coeffs = FiniteAbelianGroup(orders)
                action = parse_action(spec, m, orders)
                try:
                    periodic = h_cyclic(2, m, coeffs, action)
                except InvalidActionError:
                    continue
                assert brute_force_h2(m, coeffs, action) == periodic


def _spinor_swapped(ring):
    # same ring with the two half-spinor simples exchanged
    perm = list(range(ring.rank - 2)) + [ring.rank - 1, ring.rank - 2]
    t = np.asarray(ring.tensor)[np.ix_(perm, perm, perm)]
    dual = [perm[int(ring.dual[perm[i]])] for i in range(ring.rank)]
    grading = Grading(ring.grading.orders,
                      [ring.grading.deg[perm[i]] for i in range(ring.rank)])
    return FusionRing(list(ring.labels), 0, dual, t, grading=grading)


def test_criterion_5_separation_suite():
    with criterion(5, "row separation suite"):
        expected = [
            ((("a-odd", 2), ("a-odd-deq-1", 2)), "Z_2 x Z_2 vs Z_4"),
            ((("d-even", 3, 2), ("d4-deq", 1)), "Z_3 x Z_3 vs Z_9"),
            ((("exc4", 2), ("exc4-deq", 1)), "Z_2 x Z_2 vs Z_4"),
        ]
        for (a, b), detail in expected:
            v = separation_check(a, b)
            assert v.verdict == "ring-distinguishable"
            assert v.invariant == "invertible-group"
            assert v.detail == detail

        # negative control: exchanging the two half-spinors of the D-type
        # factor produces the same ring through the whole pipeline
        base = theorem_row("d-even", M=1).ring
        swapped = _spinor_swapped(ade_ring("D", 6))
        prod = deligne_product(swapped, pointed_ring([2]))
        alt = one_one_subring(prod, prod.grading)
        assert find_isomorphisms(alt, base, max_count=1)
        assert separation_check(("d-even", 1), ("d-even", 1)).verdict == "ring-isomorphic"


def test_criterion_6_row_audit():
    with criterion(6, "classification-row audit"):
        reports = audit_all(max_M=2)
        assert len(reports) == 28
        bad = [r.line() for r in reports if not r.passed]
        assert not bad, bad


def _element_of(label):
    return tuple(int(x) for x in label.strip("()").split(","))


def test_criterion_7_randomized_identities():
    rng = np.random.default_rng(20260822)
    with criterion(7, "randomized identity checks"):
        pool = [theorem_row(row, M=1).ring for row in ROWS]
        pool += [e4_ring(), e166_ring()]
        per_ring = 100_000 // len(pool)
        violations = 0
        for ring in pool:
            t = np.asarray(ring.tensor)
            dual = np.asarray(ring.dual, dtype=int)
            idx = rng.integers(0, ring.rank, size=(per_ring, 4))
            i, j, k, l = idx.T
            lhs = np.einsum("qm,qm->q", t[i, j], np.transpose(t, (1, 2, 0))[k, l])
            rhs = np.einsum("qm,qm->q", t[j, k], np.transpose(t, (0, 2, 1))[i, l])
            violations += int(np.count_nonzero(lhs != rhs))
            violations += int(np.count_nonzero(t[i, j, k] != t[dual[i], k, j]))
            violations += int(np.count_nonzero(t[i, j, k] != t[k, dual[j], i]))
        assert violations == 0

        for trial in range(20):
            if trial % 2:
                m = int(rng.integers(1, 6))
                prod = deligne_product(ade_ring("A", 5), pointed_ring([4 * m]))
                ring = one_one_subring(prod, prod.grading)
                label, order = "(f4,%d)" % (2 * m), 2
            else:
                orders = [int(x) for x in rng.integers(2, 7, size=rng.integers(1, 3))]
                ring = pointed_ring(orders)
                label = ring.labels[int(rng.integers(1, ring.rank))]
                order = FiniteAbelianGroup(orders).element_order(_element_of(label))
            quotient = dequiv_free(ring, [label])
            assert quotient.rank * order == ring.rank
            pre = sum(float(d) ** 2 for d in fp_dims(ring))
            post = sum(float(d) ** 2 for d in fp_dims(quotient))
            assert math.isclose(post * order, pre, rel_tol=1e-8)

        for trial in range(20):
            m = int(rng.integers(1, 9))
            if trial % 3 == 0:
                factor, e = e4_ring(), 4
            else:
                factor, e = ade_ring("A", int(rng.integers(2, 8))), 2
            prod = deligne_product(factor, pointed_ring([m]))
            sub = one_one_subring(prod, prod.grading)
            want = FiniteAbelianGroup.cyclic(math.lcm(e, m))
            assert universal_grading(sub).group == want
