"""Vertex-cover gate, partial linear kernel and forced-set reduction for
(Min) k-Shrinking to Independence."""

from __future__ import annotations

from dataclasses import dataclass

from diskshrink.geometry import NuClass, distance, unit_graph
from diskshrink.model import Instance, Solution, Verdict


@dataclass(frozen=True)
class KernelResult:
    kept: tuple[int, ...]  # T, ascending
    cover: frozenset[int]  # U
    dropped: frozenset[int]  # F = P \ T
    short_circuit: bool = False  # True means the instance is a no-instance

    @property
    def size(self) -> int:
        return len(self.kept)


@dataclass(frozen=True)
class ForcedVcInstance:
    n: int
    alpha: float
    forced: frozenset[int] = frozenset()
    vc_edges: frozenset[tuple[int, int]] = frozenset()
    infeasible_edge: tuple[int, int] | None = None


def greedy_matching_cover(n: int, edges) -> set[int]:
    """Endpoints of a maximal matching built by scanning edges in index order."""
    matched: set[int] = set()
    for u, v in sorted(edges):
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
    return matched


def vc_gate(inst: Instance) -> frozenset[int] | None:
    """2-approximate vertex cover of the unit disk graph, or None when |U| > 2k."""
    if not inst.problem.is_independence:
        raise ValueError("vc_gate applies to independence problems")
    g = unit_graph(inst.points, model=inst.model)
    cover = greedy_matching_cover(inst.n, g.edges)
    if len(cover) > 2 * inst.k:
        return None
    return frozenset(cover)


def kernelize(inst: Instance) -> KernelResult:
    cover = vc_gate(inst)
    if cover is None:
        return KernelResult((), frozenset(), frozenset(range(inst.n)), True)
    kept = {p for p in range(inst.n)
            if p in cover or any(distance(inst.points[p], inst.points[q]) <= 2.0 for q in cover)}
    return KernelResult(tuple(sorted(kept)), cover, frozenset(range(inst.n)) - kept)


def to_forced_vc(inst: Instance) -> ForcedVcInstance:
    g = unit_graph(inst.points, inst.alpha, inst.model)
    forced: set[int] = set()
    vc_edges = set()
    for (u, v), e in sorted(g.edges.items()):
        if e.nu is NuClass.BOTTOM:
            return ForcedVcInstance(inst.n, inst.alpha, infeasible_edge=(u, v))
        if e.nu is NuClass.TWO:
            forced.update((u, v))
        else:
            vc_edges.add((u, v))
    return ForcedVcInstance(inst.n, inst.alpha, frozenset(forced), frozenset(vc_edges))


def min_vertex_cover(edges, limit: int) -> set[int] | None:
    """Smallest vertex cover of size <= limit, or None. Bounded search tree."""
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    best: list[set[int] | None] = [None]

    def rec(es: set, chosen: set, budget: int):
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        if not es:
            best[0] = set(chosen)
            return
        if budget <= 0:
            return
        adj: dict[int, set[int]] = {}
        for u, v in es:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        # a matching of size > budget rules the branch out
        if len(greedy_matching_cover(0, es)) > 2 * budget:
            return
        leaf = next((v for v in sorted(adj) if len(adj[v]) == 1), None)
        if leaf is not None:
            (w,) = adj[leaf]
            rec({e for e in es if w not in e}, chosen | {w}, budget - 1)
            return
        v = max(sorted(adj), key=lambda x: len(adj[x]))
        rec({e for e in es if v not in e}, chosen | {v}, budget - 1)
        nb = adj[v]
        if len(nb) <= budget:
            rec({e for e in es if not (set(e) & nb)}, chosen | nb, budget - len(nb))

    rec(edges, set(), limit)
    return best[0]


def solve_forced_vc(fvi: ForcedVcInstance, k: int) -> Verdict:
    if fvi.infeasible_edge is not None:
        return Verdict.no("irremovable edge", edge=fvi.infeasible_edge)
    if len(fvi.forced) > k:
        return Verdict.no("forced set exceeds budget")
    residual = {e for e in fvi.vc_edges if not (set(e) & fvi.forced)}
    cover = min_vertex_cover(residual, k - len(fvi.forced))
    if cover is None:
        return Verdict.no("vertex cover exceeds budget")
    shrunk = fvi.forced | cover
    return Verdict(True, Solution.uniform(fvi.n, shrunk, fvi.alpha), stats={"min_size": len(shrunk)})


def solve_independence(inst: Instance) -> Verdict:
    """Exact decision for the cardinality variant via kernel + forced-set search."""
    if inst.problem.is_min:
        raise ValueError("use solvers.fpt_min_independence for the Min variant")
    ker = kernelize(inst)
    if ker.short_circuit:
        return Verdict.no("vertex cover gate", kernel_size=0)
    sub, index_map = inst.restrict(ker.kept)
    res = solve_forced_vc(to_forced_vc(sub), inst.k)
    res.stats["kernel_size"] = ker.size
    if res.answer:
        res.witness = Solution.lift(inst.n, res.witness, index_map)
    return res
