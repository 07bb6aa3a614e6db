import pytest

from diskshrink.geometry import Point, unit_graph
from diskshrink.kernel_indep import (ForcedVcInstance, kernelize, min_vertex_cover, solve_forced_vc,
                                     solve_independence, to_forced_vc, vc_gate)
from diskshrink.model import Instance, validate
from oracles import brute_min_shrink, brute_vertex_cover, random_instance, seeded


def inst_of(points, k=1, alpha=0.5):
    return Instance(tuple(points), "shrink-independence", alpha, k)


def test_gate_edgeless_and_single_edge():
    assert vc_gate(inst_of([Point(0, 0), Point(5, 0)], k=0)) == frozenset()
    assert vc_gate(inst_of([Point(0, 0), Point(1.8, 0)], k=1)) == {0, 1}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gate_rejects_matching_larger_than_k(k):
    pts = []
    for i in range(k + 1):
        pts += [Point(10.0 * i, 0), Point(10.0 * i + 1.8, 0)]
    edges = list(unit_graph(pts).edges)
    assert brute_vertex_cover(len(pts), edges) == k + 1
    assert vc_gate(inst_of(pts, k)) is None
    assert kernelize(inst_of(pts, k)).short_circuit


def test_kernel_drops_isolated_point():
    inst = inst_of([Point(0, 0), Point(1.8, 0), Point(20, 20)])
    ker = kernelize(inst)
    assert ker.kept == (0, 1) and ker.dropped == {2} and ker.cover <= set(ker.kept)


def test_kernel_of_edgeless_is_empty():
    ker = kernelize(inst_of([Point(0, 0), Point(3, 0)], k=0))
    assert ker.size == 0 and not ker.short_circuit
    assert solve_independence(inst_of([Point(0, 0), Point(3, 0)], k=0)).answer


@pytest.mark.parametrize("d, forced, vc, bad", [
    (1.8, set(), {(0, 1)}, None),
    (1.5, {0, 1}, set(), None),
    (1.2, set(), set(), (0, 1)),
])
def test_forced_vc_classification(d, forced, vc, bad):
    fvi = to_forced_vc(Instance((Point(0, 0), Point(d, 0)), "shrink-independence", 0.65, 1))
    assert fvi.forced == forced and fvi.vc_edges == vc and fvi.infeasible_edge == bad


def test_solve_forced_vc_examples():
    assert solve_forced_vc(ForcedVcInstance(2, 0.5, frozenset({0, 1})), 2).witness.shrunk == {0, 1}
    c5 = frozenset((i, (i + 1) % 5) if i < 4 else (0, 4) for i in range(5))
    assert brute_vertex_cover(5, c5) == 3
    assert not solve_forced_vc(ForcedVcInstance(5, 0.5, vc_edges=c5), 2).answer
    assert solve_forced_vc(ForcedVcInstance(5, 0.5, vc_edges=c5), 3).answer
    assert not solve_forced_vc(ForcedVcInstance(2, 0.5, infeasible_edge=(0, 1)), 10).answer


def test_min_vertex_cover_is_minimum():
    rng = seeded(5)
    for _ in range(200):
        n = rng.randint(1, 9)
        edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35}
        ref = brute_vertex_cover(n, edges)
        got = min_vertex_cover(edges, n)
        assert got is not None and len(got) == ref
        assert all(u in got or v in got for u, v in edges)
        assert min_vertex_cover(edges, ref - 1) is None if ref else True


def test_kernel_size_and_equivalence():
    rng = seeded(21)
    for _ in range(150):
        inst = random_instance(rng, "shrink-independence", n_range=(2, 12), k_range=(0, 4))
        ker = kernelize(inst)
        if not ker.short_circuit:
            assert len(ker.cover) <= 2 * inst.k
            assert ker.size <= 7 * len(ker.cover) <= 14 * inst.k
        ref = brute_min_shrink(inst)
        v = solve_independence(inst)
        assert v.answer == (ref is not None and ref <= inst.k)
        if v.answer:
            assert validate(inst, v.witness)
