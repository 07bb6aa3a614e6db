"""Compression of (Min) k-Shrinking to Acyclicity into an annotated multigraph.

Pipeline: degree gate -> prune degree <= 1 / tree components -> isolated cycles
become cycle vertices -> maximal degree-2 paths become reducible edges between
core (degree >= 3) vertices -> size gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from diskshrink.geometry import DiskGraph, NuClass, distance, edge_nu, unit_graph
from diskshrink.model import Instance

ORIGINAL = "original"
REDUCIBLE = "reducible"


@dataclass(frozen=True)
class CycleVertex:
    members: tuple[int, ...]  # in cycle order
    d_max: float
    max_edge: tuple[int, int]
    nu: NuClass

    @property
    def count_needed(self) -> float:
        return self.nu.count

    @property
    def cost_needed(self) -> float:
        return 2.0 - self.d_max


@dataclass(frozen=True)
class MultiEdge:
    id: int
    kind: str
    u: int
    v: int
    dist: float | None = None  # original edges
    d_start: float | None = None
    d_end: float | None = None
    d_max: float | None = None  # None when the path has no interior-interior edge
    path: tuple[int, ...] = ()  # internal vertices ordered from u to v
    max_edge: tuple[int, int] | None = None

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass
class AnnotatedMultigraph:
    core_vertices: frozenset[int] = frozenset()
    cycle_vertices: list[CycleVertex] = field(default_factory=list)
    edges: list[MultiEdge] = field(default_factory=list)

    def degree(self, v: int) -> int:
        return sum((e.u == v) + (e.v == v) for e in self.edges)

    def signature(self):
        """Isomorphism-invariant-enough fingerprint used in idempotence checks."""
        es = sorted((e.kind, round(e.dist or 0, 12), round(e.d_start or 0, 12), round(e.d_end or 0, 12),
                     None if e.d_max is None else round(e.d_max, 12), len(e.path), e.is_loop)
                    for e in self.edges)
        cs = sorted((round(c.d_max, 12), len(c.members)) for c in self.cycle_vertices)
        degs = sorted(self.degree(v) for v in self.core_vertices)
        return len(self.core_vertices), degs, es, cs


@dataclass
class CompressResult:
    graph: AnnotatedMultigraph
    k_remaining: int
    fixed_cost: float
    n: int
    alpha: float
    short_circuit: bool = False
    reason: str = ""
    pruned: frozenset[int] = frozenset()

    def reconstruct(self, core_radii: Mapping[int, float], choices: Mapping[int, tuple],
                    min_variant: bool) -> dict[int, float]:
        """Point-level radii from compressed decisions.

        ``choices`` maps a removed reducible edge id to ``(mode, c, y)`` where
        mode is "start"/"end"/"max", ``c`` the number of implicitly shrunk path
        vertices and ``y`` their shrink amount (Min variant, start/end modes).
        """
        a = self.alpha
        radii = {i: 1.0 for i in range(self.n)}
        for v, r in core_radii.items():
            radii[v] = r
        edges = {e.id: e for e in self.graph.edges}
        for eid, (mode, c, y) in choices.items():
            e = edges[eid]
            if mode == "max":
                _shrink_pair(radii, e.max_edge, e.d_max, a, min_variant)
            elif c:
                inner = e.path[0] if mode == "start" else e.path[-1]
                radii[inner] = (1.0 - y) if min_variant else a
        for cv in self.graph.cycle_vertices:
            _shrink_pair(radii, cv.max_edge, cv.d_max, a, min_variant)
        return radii


def _shrink_pair(radii: dict, pair: tuple[int, int], d: float, alpha: float, min_variant: bool) -> None:
    p, q = pair
    cls = edge_nu(d, alpha)
    if cls is NuClass.ONE:
        radii[p] = (d - 1.0) if min_variant else alpha
    elif min_variant:
        radii[p] = d / 2.0
        radii[q] = d - radii[p]
    else:
        radii[p] = radii[q] = alpha


def degree_bound(k: int) -> int:
    return 25 * k + 50


def degree_gate(inst: Instance, g: DiskGraph | None = None) -> bool:
    """False when some unit-graph degree exceeds 25k + 50 (no-instance)."""
    g = g or unit_graph(inst.points, model=inst.model)
    return g.max_degree() <= degree_bound(inst.k)


def size_bound(k: int) -> int:
    delta = 25 * k + 51
    return k * (delta - 1) + 3 * k - 1


def size_gate(g: AnnotatedMultigraph, k: int) -> bool:
    return not g.core_vertices or len(g.core_vertices) <= size_bound(k)


def _adjacency(g: DiskGraph) -> dict[int, set[int]]:
    return {v: set(nb) for v, nb in enumerate(g.adj)}


def _components(adj: Mapping[int, set[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def prune(inst: Instance, g: DiskGraph | None = None) -> dict[int, set[int]]:
    """Delete degree <= 1 vertices repeatedly, then acyclic components.

    Returns the adjacency of the surviving vertices (original indices).
    """
    g = g or unit_graph(inst.points, model=inst.model)
    adj = _adjacency(g)
    queue = [v for v in adj if len(adj[v]) <= 1]
    while queue:
        v = queue.pop()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1:
                queue.append(w)
    for comp in _components(adj):
        m = sum(len(adj[v]) for v in comp) // 2
        if m == len(comp) - 1:
            for v in comp:
                del adj[v]
    return adj


def replace_isolated_cycles(inst: Instance, adj: Mapping[int, set[int]]):
    """Split pruned components into isolated cycles and interesting ones.

    Returns ``(cycle_vertices, interesting_vertices, reason)``; ``reason`` is a
    non-empty string when a no-instance was detected.
    """
    pts = inst.points
    cycles: list[CycleVertex] = []
    rest: set[int] = set()
    for comp in _components(adj):
        if any(len(adj[v]) != 2 for v in comp):
            rest.update(comp)
            continue
        order = [comp[0]]
        prev, cur = None, comp[0]
        while True:
            nxt = min(adj[cur]) if prev is None else next(iter(adj[cur] - {prev}))
            if nxt == comp[0]:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        best = None
        for i, a in enumerate(order):
            b = order[(i + 1) % len(order)]
            d = distance(pts[a], pts[b])
            key = (-d, min(a, b), max(a, b))
            if best is None or key < best:
                best = key
        d_max, p, q = -best[0], best[1], best[2]
        cls = edge_nu(d_max, inst.alpha)
        cycles.append(CycleVertex(tuple(order), d_max, (p, q), cls))
        if cls is NuClass.BOTTOM:
            return cycles, rest, "isolated cycle with only irremovable edges"
    return cycles, rest, ""


def contract_reducible_paths(inst: Instance, adj: Mapping[int, set[int]],
                             vertices: set[int] | None = None) -> AnnotatedMultigraph:
    pts = inst.points
    verts = set(adj) if vertices is None else set(vertices)
    core = sorted(v for v in verts if len(adj[v]) >= 3)
    core_set = set(core)
    edges: list[MultiEdge] = []
    seen_paths: set[frozenset] = set()
    for v in core:
        for w in sorted(adj[v]):
            if w in core_set:
                if v < w:
                    edges.append(MultiEdge(len(edges), ORIGINAL, v, w, dist=distance(pts[v], pts[w])))
                continue
            walk = [v, w]
            prev, cur = v, w
            while cur not in core_set:
                (nxt,) = adj[cur] - {prev}
                walk.append(nxt)
                prev, cur = cur, nxt
            interior = frozenset(walk[1:-1])
            if interior in seen_paths:
                continue
            seen_paths.add(interior)
            edges.append(_reducible(len(edges), walk, pts))
    return AnnotatedMultigraph(frozenset(core), [], edges)


def _reducible(eid: int, walk: list[int], pts) -> MultiEdge:
    a, b = walk[0], walk[-1]
    if a > b or (a == b and walk[1] > walk[-2]):
        walk = walk[::-1]
        a, b = b, a
    inner = walk[1:-1]
    d_start = distance(pts[walk[0]], pts[walk[1]])
    d_end = distance(pts[walk[-2]], pts[walk[-1]])
    d_max, max_edge = None, None
    for x, y in zip(inner, inner[1:]):
        d = distance(pts[x], pts[y])
        key = (min(x, y), max(x, y))
        if d_max is None or d > d_max or (d == d_max and key < max_edge):
            d_max, max_edge = d, key
    return MultiEdge(eid, REDUCIBLE, a, b, d_start=d_start, d_end=d_end, d_max=d_max,
                     path=tuple(inner), max_edge=max_edge)


def compress(inst: Instance) -> CompressResult:
    if not inst.problem.is_acyclicity:
        raise ValueError("compress applies to acyclicity problems")
    k = inst.k
    g = unit_graph(inst.points, model=inst.model)

    def no(reason):
        return CompressResult(AnnotatedMultigraph(), k, 0.0, inst.n, inst.alpha, True, reason)

    if not degree_gate(inst, g):
        return no(f"degree exceeds {degree_bound(k)}")
    adj = prune(inst, g)
    if adj and k <= 0:
        return no("k = 0 but the unit disk graph has a cycle")
    cycles, rest, reason = replace_isolated_cycles(inst, adj)
    if reason:
        return no(reason)
    need = sum(c.count_needed for c in cycles)
    if need > k:
        return no("isolated cycles alone exceed the budget")
    graph = contract_reducible_paths(inst, adj, rest)
    graph.cycle_vertices = cycles
    if not size_gate(graph, k):
        return no(f"more than {size_bound(k)} core vertices")
    fixed = math.fsum(c.cost_needed for c in cycles)
    return CompressResult(graph, int(k - need), fixed, inst.n, inst.alpha, pruned=frozenset(adj))
