import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskshrink.compress_acyc import (ORIGINAL, REDUCIBLE, _reducible, compress, degree_bound, degree_gate,
                                      prune, size_bound, size_gate, AnnotatedMultigraph)
from diskshrink.geometry import NuClass, Point
from diskshrink.model import Instance
from oracles import brute_min_shrink, grid_cycle_cost, polygon, random_instance, seeded


def acyc(points, k=1, alpha=0.5, mu=None):
    problem = "min-shrink-acyclicity" if mu is not None else "shrink-acyclicity"
    return Instance(tuple(points), problem, alpha, k, mu)


def theta_points():
    """Two hubs joined by three disjoint paths with spacing 1.5."""
    top = [(0, 1.5), (0, 3), (1.5, 3), (3, 3), (4.5, 3), (6, 3), (6, 1.5)]
    mid = [(1.5, 0), (3, 0), (4.5, 0)]
    bottom = [(x, -y) for x, y in top]
    return [Point(0, 0), Point(6, 0)] + [Point(x, y) for x, y in top + mid + bottom]


def test_degree_gate_star():
    leaves = [Point(1.9 * math.cos(2 * math.pi * i / 76), 1.9 * math.sin(2 * math.pi * i / 76))
              for i in range(76)]
    inst = acyc([Point(0, 0)] + leaves, k=1)
    assert degree_bound(1) == 75
    assert not degree_gate(inst)
    assert compress(inst).short_circuit
    assert degree_gate(acyc([Point(0, 0)] + leaves[:75], k=1))


def test_size_bound_formula():
    assert size_bound(1) == 77
    for k in range(6):
        assert size_bound(k) == k * (25 * k + 50) + 3 * k - 1
    assert size_gate(AnnotatedMultigraph(), 0)


def test_prune_examples():
    path = [Point(1.5 * i, 0) for i in range(5)]
    assert prune(acyc(path)) == {}
    tri = polygon(3, 1.5)
    pendant = tri + [Point(tri[0].x + 1.5, tri[0].y)]
    assert set(prune(acyc(pendant))) == {0, 1, 2}
    # a tree hanging off nothing disappears entirely, cycles elsewhere survive
    far = [Point(p.x + 50, p.y) for p in path]
    assert set(prune(acyc(pendant + far))) == {0, 1, 2}


def test_isolated_cycle_one_shrink():
    hexagon = polygon(6, 1.9)
    res = compress(acyc(hexagon, k=1, mu=1.0))
    (cv,) = res.graph.cycle_vertices
    assert cv.nu is NuClass.ONE and cv.count_needed == 1
    assert cv.cost_needed == pytest.approx(0.1)
    assert cv.cost_needed == pytest.approx(grid_cycle_cost(hexagon, 0.5), abs=2e-3)
    assert res.k_remaining == 0 and not res.graph.core_vertices


def test_isolated_cycle_two_shrinks():
    hexagon = polygon(6, 1.2)
    res = compress(acyc(hexagon, k=2, mu=1.0))
    (cv,) = res.graph.cycle_vertices
    assert cv.nu is NuClass.TWO and cv.count_needed == 2
    assert cv.cost_needed == pytest.approx(0.8)
    assert cv.cost_needed == pytest.approx(grid_cycle_cost(hexagon, 0.5), abs=2e-3)
    assert compress(acyc(hexagon, k=1)).short_circuit
    assert brute_min_shrink(acyc(hexagon)) == 2


def test_irremovable_triangle():
    res = compress(acyc(polygon(3, 0.9), k=3))
    assert res.short_circuit and "irremovable" in res.reason


def test_theta_contracts_to_three_parallel_edges():
    res = compress(acyc(theta_points(), k=2))
    g = res.graph
    assert g.core_vertices == {0, 1}
    assert [e.kind for e in g.edges] == [REDUCIBLE] * 3
    assert all({e.u, e.v} == {0, 1} for e in g.edges)
    assert sorted(len(e.path) for e in g.edges) == [3, 7, 7]
    assert g.degree(0) == g.degree(1) == 3


def test_reducible_edge_distances():
    pts = [Point(0, 0), Point(1.6, 0), Point(3.4, 0)]
    e = _reducible(0, [0, 1, 2], pts)
    assert e.d_start == pytest.approx(1.6) and e.d_end == pytest.approx(1.8) and e.d_max is None
    pts4 = pts + [Point(4.9, 0)]
    e2 = _reducible(1, [0, 1, 2, 3], pts4)
    assert e2.d_max == pytest.approx(1.8) and e2.max_edge == (1, 2)


def test_original_edges_between_core_vertices():
    # square of side 1.2 has diagonals below 2, so its unit graph is K4
    k4 = [Point(0, 0), Point(1.2, 0), Point(0, 1.2), Point(1.2, 1.2)]
    res = compress(acyc(k4, k=3))
    assert res.graph.core_vertices == {0, 1, 2, 3}
    assert all(e.kind == ORIGINAL for e in res.graph.edges) and len(res.graph.edges) == 6


def _random_acyc(rng):
    return random_instance(rng, "shrink-acyclicity", n_range=(3, 22), k_range=(0, 4), box_range=(2.5, 8.0))


def test_degree_preserved_on_core():
    rng = seeded(8)
    for _ in range(300):
        inst = _random_acyc(rng)
        res = compress(inst)
        if res.short_circuit:
            continue
        adj = prune(inst)
        for v in res.graph.core_vertices:
            assert res.graph.degree(v) == len(adj[v])


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_compression_is_idempotent(seed):
    inst = _random_acyc(seeded(seed))
    res = compress(inst)
    if res.short_circuit:
        return
    sub, _ = inst.restrict(sorted(res.pruned))
    again = compress(sub)
    assert not again.short_circuit
    assert again.graph.signature() == res.graph.signature()
    assert again.k_remaining == res.k_remaining and again.fixed_cost == pytest.approx(res.fixed_cost)


def test_short_circuit_only_on_no_instances():
    rng = seeded(13)
    for _ in range(150):
        inst = random_instance(rng, "shrink-acyclicity", n_range=(3, 10), k_range=(0, 3))
        if compress(inst).short_circuit:
            ref = brute_min_shrink(inst)
            assert ref is None or ref > inst.k
