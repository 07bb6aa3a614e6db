import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskshrink.geometry import Point
from diskshrink.model import Instance, Solution, validate
from diskshrink.solvers import (OracleSizeError, connectivity_degree_threshold, fpt_acyclicity,
                                fpt_min_independence, guess_bound, independence_lp, mark_unshrinkable,
                                maximal_acyclic_subsets, oracle_acyclicity, oracle_connectivity,
                                oracle_independence, solve, solve_connectivity)
from oracles import (brute_min_shrink, grid_cycle_cost, grid_pair_cost, grid_single_shrink_cost, is_forest,
                     polygon, random_instance, seeded)


def brute_connectivity(inst):
    for S in itertools.combinations(range(inst.n), inst.k):
        if validate(inst, Solution.uniform(inst.n, S, inst.alpha)):
            return True
    return False


# ---------------------------------------------------------------- independence

def test_pair_cost_matches_grid():
    inst = Instance((Point(0, 0), Point(1.8, 0)), "min-shrink-independence", 0.5, 1, mu=0.2)
    v = fpt_min_independence(inst)
    assert v.answer and v.optimum_cost == pytest.approx(0.2)
    assert v.optimum_cost == pytest.approx(grid_single_shrink_cost(1.8, 0.5), abs=2e-3)
    both = fpt_min_independence(inst.with_k(2))
    assert both.optimum_cost == pytest.approx(grid_pair_cost(1.8, 0.5), abs=2e-3)


def test_three_point_path_shrinks_middle():
    pts = (Point(0, 0), Point(1.5, 0), Point(3.0, 0))
    inst = Instance(pts, "min-shrink-independence", 0.5, 1, mu=1.0)
    v = fpt_min_independence(inst)
    assert v.witness.shrunk == {1} and v.optimum_cost == pytest.approx(0.5)
    assert not fpt_min_independence(Instance(pts, "min-shrink-independence", 0.5, 1, mu=0.4)).answer


def test_independence_lp_infeasible_set():
    assert independence_lp([Point(0, 0), Point(1.2, 0)], [0], 0.5) is None
    cost, radii = independence_lp([Point(0, 0), Point(1.2, 0)], [0, 1], 0.5)
    assert cost == pytest.approx(0.8) and radii[0] + radii[1] == pytest.approx(1.2)


def test_fpt_independence_matches_oracle():
    rng = seeded(31)
    for _ in range(120):
        inst = random_instance(rng, "min-shrink-independence", n_range=(2, 10), k_range=(0, 3),
                               box_range=(3.0, 8.0))
        v, ref = fpt_min_independence(inst), oracle_independence(inst)
        assert v.answer == ref.answer
        if ref.optimum_cost is not None:
            assert v.optimum_cost == pytest.approx(ref.optimum_cost, abs=1e-6)
        if "guesses" in v.stats:
            assert v.stats["guesses"] <= v.stats["guess_bound"]


def test_cardinality_oracle_matches_brute_force():
    rng = seeded(32)
    for _ in range(100):
        inst = random_instance(rng, "shrink-independence", n_range=(2, 9), k_range=(0, 3))
        ref = brute_min_shrink(inst)
        assert oracle_independence(inst).answer == (ref is not None and ref <= inst.k)


def test_guess_bound_and_oracle_cap():
    assert guess_bound(5, 2) == 1 + 5 + 10
    assert guess_bound(2, 5) == 4
    big = Instance(tuple(Point(3.0 * i, 0) for i in range(17)), "shrink-independence", 0.5, 1)
    with pytest.raises(OracleSizeError):
        oracle_independence(big)


# ------------------------------------------------------------------ acyclicity

def test_maximal_acyclic_subsets_of_triangle():
    tri = [(0, 1), (1, 2), (0, 2)]
    subsets = sorted(sorted(s) for s in maximal_acyclic_subsets(tri))
    assert subsets == [[0, 1], [0, 2], [1, 2]]
    assert all(len(s) == 1 for s in maximal_acyclic_subsets(tri[:2], forced=[(0, 2)]))


def test_hexagon_costs():
    for side, k, cost in [(1.9, 1, 0.1), (1.2, 2, 0.8)]:
        hexagon = polygon(6, side)
        inst = Instance(tuple(hexagon), "min-shrink-acyclicity", 0.5, k, mu=1.0)
        v = fpt_acyclicity(inst)
        assert v.answer and v.optimum_cost == pytest.approx(cost)
        assert v.optimum_cost == pytest.approx(grid_cycle_cost(hexagon, 0.5), abs=2e-3)
        assert v.optimum_cost == pytest.approx(oracle_acyclicity(inst).optimum_cost)


def test_two_hexagons_need_two_shrinks():
    pts = polygon(6, 1.9) + polygon(6, 1.9, centre=(20.0, 0.0))
    inst = Instance(tuple(pts), "shrink-acyclicity", 0.5, 1)
    assert not fpt_acyclicity(inst).answer
    assert fpt_acyclicity(inst.with_k(2)).answer


def test_square_k4_needs_two():
    k4 = (Point(0, 0), Point(1.2, 0), Point(0, 1.2), Point(1.2, 1.2))
    inst = Instance(k4, "shrink-acyclicity", 0.3, 1)
    assert brute_min_shrink(inst) == fpt_acyclicity(inst.with_k(4)).stats["min_size"]
    assert fpt_acyclicity(inst).answer == (brute_min_shrink(inst) <= 1)


def _acyc_instance(rng, problem):
    return random_instance(rng, problem, n_range=(3, 11), k_range=(0, 3), box_range=(2.5, 6.0), max_edges=16)


@pytest.mark.parametrize("problem", ["shrink-acyclicity", "min-shrink-acyclicity"])
def test_fpt_acyclicity_matches_oracle(problem):
    rng = seeded(41 if problem.startswith("min") else 42)
    for _ in range(80):
        inst = _acyc_instance(rng, problem)
        v, ref = fpt_acyclicity(inst), oracle_acyclicity(inst)
        assert v.answer == ref.answer, inst
        if ref.optimum_cost is not None and v.optimum_cost is not None:
            assert v.optimum_cost == pytest.approx(ref.optimum_cost, abs=1e-6)
        if v.answer:
            r, pts = v.witness.radii, inst.points
            edges = [(i, j) for i, j in itertools.combinations(range(inst.n), 2)
                     if math.hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) < r[i] + r[j] - 1e-9]
            assert is_forest(inst.n, edges)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_acyclicity_monotone_in_k(seed):
    inst = _acyc_instance(seeded(seed), "shrink-acyclicity")
    if fpt_acyclicity(inst).answer:
        assert fpt_acyclicity(inst.with_k(inst.k + 1)).answer


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_min_cost_monotone_in_budget(seed):
    inst = _acyc_instance(seeded(seed), "min-shrink-acyclicity")
    a, b = fpt_acyclicity(inst), fpt_acyclicity(inst.with_k(inst.k + 1))
    if a.optimum_cost is not None:
        assert b.optimum_cost is not None and b.optimum_cost <= a.optimum_cost + 1e-9


# ---------------------------------------------------------------- connectivity

def test_clique_allows_everyone_to_shrink():
    pts = tuple(Point(0.3 * math.cos(t), 0.3 * math.sin(t)) for t in range(5))
    inst = Instance(pts, "shrink-connectivity", 0.5, 5)
    assert solve_connectivity(inst).answer and mark_unshrinkable(inst) == frozenset()


def test_path_at_touching_distance():
    pts = tuple(Point(2.0 * i, 0) for i in range(4))
    inst = Instance(pts, "shrink-connectivity", 0.5, 1)
    assert mark_unshrinkable(inst) == {0, 1, 2, 3}
    assert not solve_connectivity(inst).answer
    assert solve_connectivity(inst.with_k(0)).answer


def test_star_matches_oracle():
    leaves = [Point(1.2 * math.cos(math.pi * i / 3), 1.2 * math.sin(math.pi * i / 3)) for i in range(6)]
    inst = Instance(tuple([Point(0, 0)] + leaves), "shrink-connectivity", 0.9, 6)
    assert solve_connectivity(inst).answer == brute_connectivity(inst) == oracle_connectivity(inst).answer
    assert solve_connectivity(inst.with_k(7)).answer == brute_connectivity(inst.with_k(7))


def test_threshold_value():
    assert connectivity_degree_threshold(1.0, 0) == pytest.approx(9 * 25 + 9)
    assert connectivity_degree_threshold(0.5, 2) == pytest.approx(9 * 81 + 11)


def test_unshrinkable_marking_is_exact():
    rng = seeded(51)
    for _ in range(60):
        inst = random_instance(rng, "shrink-connectivity", n_range=(2, 10), k_range=(1, 1), box_range=(1.5, 6.0))
        expected = {p for p in range(inst.n)
                    if not validate(inst, Solution.uniform(inst.n, {p}, inst.alpha))}
        assert mark_unshrinkable(inst) == expected


def test_connectivity_matches_brute_force():
    rng = seeded(52)
    for _ in range(120):
        inst = random_instance(rng, "shrink-connectivity", n_range=(2, 10), k_range=(0, 6), box_range=(1.5, 6.0))
        v = solve_connectivity(inst)
        assert not v.inconclusive
        assert v.answer == brute_connectivity(inst)


def test_dispatch():
    inst = Instance((Point(0, 0), Point(1.8, 0)), "shrink-independence", 0.5, 1)
    assert solve(inst).answer
    with pytest.raises(NotImplementedError):
        solve(Instance((Point(0, 0), Point(3, 0)), "expand-connectivity", 2.0, 1))
