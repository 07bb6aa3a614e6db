import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskshrink.geometry import Point, unit_graph
from diskshrink.model import Instance, validate
from diskshrink.treewidth import (acyclicity_degree_threshold, check_decomposition, clique_degree_gate,
                                  decompose, dp_acyclicity, dp_independence, independence_degree_threshold,
                                  raw_decomposition, solve_by_treewidth)
from oracles import brute_min_shrink, brute_treewidth, polygon, random_instance, seeded


def test_thresholds():
    assert independence_degree_threshold(1.0) == pytest.approx(8)
    assert independence_degree_threshold(0.5) == pytest.approx(24)
    assert acyclicity_degree_threshold(1.0) == pytest.approx(53)


@pytest.mark.parametrize("n, edges, width", [
    (5, [(0, 1), (1, 2), (1, 3), (3, 4)], 1),
    (4, [(i, j) for i in range(4) for j in range(i + 1, 4)], 3),
    (6, [(i, (i + 1) % 6) for i in range(6)], 2),
    (3, [], 0),
])
def test_known_widths(n, edges, width):
    assert brute_treewidth(n, edges) == width
    td = decompose(n, edges)
    assert check_decomposition(td, n, edges) == ""
    assert td.width == width


def test_checker_catches_missing_edge():
    td = raw_decomposition(3, [(0, 1), (1, 2)])
    assert check_decomposition(td, 3, [(0, 1), (1, 2), (0, 2)]) != ""


@settings(max_examples=80)
@given(st.integers(1, 9), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_decomposition_valid_on_random_graphs(n, p, seed):
    rng = seeded(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    td = decompose(n, edges)
    assert check_decomposition(td, n, edges) == ""
    if n <= 7:
        assert td.width >= brute_treewidth(n, edges)


def test_dp_pentagon_needs_three():
    inst = Instance(tuple(polygon(5, 1.8)), "shrink-independence", 0.5, 3)
    v = dp_independence(inst)
    assert v.answer and v.stats["min_size"] == 3 == brute_min_shrink(inst)
    assert not dp_independence(inst.with_k(2)).answer


def test_dp_hexagons():
    one = Instance(tuple(polygon(6, 1.9)), "shrink-acyclicity", 0.5, 1)
    assert dp_acyclicity(one).stats["min_size"] == 1
    two = Instance(tuple(polygon(6, 1.9) + polygon(6, 1.9, (20.0, 0.0))), "shrink-acyclicity", 0.5, 1)
    assert not dp_acyclicity(two).answer
    assert dp_acyclicity(two.with_k(2)).stats["min_size"] == 2


def test_dp_rejects_irremovable_edge():
    inst = Instance((Point(0, 0), Point(0.5, 0)), "shrink-independence", 0.5, 2)
    assert not dp_independence(inst).answer


def test_degree_gate_on_dense_star():
    leaves = [Point(1.9 * math.cos(2 * math.pi * i / 30), 1.9 * math.sin(2 * math.pi * i / 30)) for i in range(30)]
    inst = Instance(tuple([Point(0, 0)] + leaves), "shrink-independence", 0.5, 5)
    assert unit_graph(inst.points).max_degree() == 30
    assert not clique_degree_gate(inst) and not solve_by_treewidth(inst).answer
    with pytest.raises(ValueError):
        solve_by_treewidth(Instance(inst.points, "min-shrink-independence", 0.5, 1, mu=1.0))


@pytest.mark.parametrize("problem", ["shrink-independence", "shrink-acyclicity"])
def test_dp_matches_brute_force(problem):
    rng = seeded(61 if problem.endswith("independence") else 62)
    dp = dp_independence if problem.endswith("independence") else dp_acyclicity
    for _ in range(80):
        inst = random_instance(rng, problem, n_range=(2, 10), k_range=(0, 4), box_range=(2.0, 6.0))
        v, ref = dp(inst), brute_min_shrink(inst)
        assert v.answer == (ref is not None and ref <= inst.k)
        if ref is not None:
            assert v.stats["min_size"] == ref
        if v.answer:
            assert validate(inst, v.witness)
