import math

from hypothesis import given, settings, strategies as st

from fusionrings import (
    FiniteAbelianGroup,
    ade_ring,
    deligne_product,
    dequiv_free,
    fp_dims,
    invertibles,
    one_one_subring,
    pointed_ring,
    universal_grading,
    verify_axioms,
)

orders_lists = st.lists(st.integers(2, 6), min_size=1, max_size=3).filter(
    lambda o: math.prod(o) <= 24)


@settings(max_examples=20, deadline=None)
@given(orders_lists)
def test_pointed_ring_is_its_group(orders):
    ring = pointed_ring(orders)
    assert verify_axioms(ring).ok
    assert all(abs(float(d) - 1.0) < 1e-9 for d in fp_dims(ring))
    inv = invertibles(ring)
    assert len(inv.indices) == ring.rank
    assert inv.group == FiniteAbelianGroup(orders)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 6), st.integers(1, 5))
def test_deligne_product_multiplies_rank_and_dims(n, m):
    a = ade_ring("A", n)
    prod = deligne_product(a, pointed_ring([m]))
    assert verify_axioms(prod).ok
    assert prod.rank == a.rank * m
    total = sum(float(d) ** 2 for d in fp_dims(a))
    assert math.isclose(sum(float(d) ** 2 for d in fp_dims(prod)),
                        m * total, rel_tol=1e-8)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 9), st.data())
def test_free_quotient_divides_pointed_rank(m, data):
    ring = pointed_ring([m])
    g = data.draw(st.integers(1, m - 1))
    quotient = dequiv_free(ring, [str(g)])
    order = m // math.gcd(g, m)
    assert quotient.rank * order == ring.rank
    assert verify_axioms(quotient).ok


@settings(max_examples=6, deadline=None)
@given(st.integers(1, 3))
def test_free_quotient_halves_total_dimension(M):
    prod = deligne_product(ade_ring("A", 5), pointed_ring([4 * M]))
    base = one_one_subring(prod, prod.grading)
    quotient = dequiv_free(base, ["(f4,%d)" % (2 * M)])
    assert 2 * quotient.rank == base.rank
    pre = sum(float(d) ** 2 for d in fp_dims(base))
    post = sum(float(d) ** 2 for d in fp_dims(quotient))
    assert math.isclose(2 * post, pre, rel_tol=1e-8)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 7), st.integers(1, 6))
def test_trivial_component_grading_is_lcm(n, M):
    # the universal grading of any A_n ring is Z_2: its adjoint is the even half
    prod = deligne_product(ade_ring("A", n), pointed_ring([M]))
    sub = one_one_subring(prod, prod.grading)
    want = FiniteAbelianGroup.cyclic(math.lcm(2, M))
    assert universal_grading(sub).group == want
