"""Exact oracles and FPT drivers.

Independence: subset enumeration with an LP per shrink set, on the original
points (oracle) or on the kernel (FPT driver). Acyclicity: shrink-set by
deletion-set enumeration (oracle) or forest guessing on the compressed
multigraph (FPT driver). Connectivity: unshrinkable marking, a large-degree
yes-gate and branch-and-bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from diskshrink import lp as lpmod
from diskshrink.compress_acyc import ORIGINAL, CompressResult, MultiEdge, compress
from diskshrink.geometry import NuClass, Point, distance, edge_nu, unit_graph
from diskshrink.kernel_indep import kernelize, solve_independence
from diskshrink.model import Instance, Problem, Solution, Verdict, validate

ORACLE_CAP = 16
ACYC_ORACLE_CAP = 12
ACYC_EDGE_CAP = 18


class OracleSizeError(ValueError):
    pass


def _budget_ok(inst: Instance, cost: float) -> bool:
    return cost <= inst.mu + 1e-9 * max(1, inst.n)


def _checked(inst: Instance, verdict: Verdict) -> Verdict:
    if verdict.answer and verdict.witness is not None:
        res = validate(inst, verdict.witness)
        if not res:
            raise AssertionError(f"solver produced an invalid witness: {res.reason}")
    return verdict


def _dist_matrix(points: Sequence[Point]) -> np.ndarray:
    xy = np.array([[p.x, p.y] for p in points], dtype=float).reshape(-1, 2)
    return np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])


# ---------------------------------------------------------------- independence

def independence_lp(points: Sequence[Point], shrunk: Sequence[int], alpha: float):
    """Cheapest radii on ``shrunk`` making every disk pair disjoint.

    Returns ``(cost, radii)`` or None when even radius alpha on ``shrunk`` fails.
    """
    n = len(points)
    S = sorted(shrunk)
    pos = {p: i for i, p in enumerate(S)}
    upper = [1.0] * len(S)
    pairs = []
    for p in range(n):
        for q in range(p + 1, n):
            d = distance(points[p], points[q])
            if d >= 2.0:
                continue
            if p in pos and q in pos:
                if alpha + alpha > d:
                    return None
                pairs.append((pos[p], pos[q], d))
            elif p in pos or q in pos:
                i = pos[p] if p in pos else pos[q]
                if 1.0 + alpha > d:
                    return None
                upper[i] = min(upper[i], d - 1.0)
            else:
                return None
    if not S:
        return 0.0, {i: 1.0 for i in range(n)}
    prog = lpmod.LinearProgram(len(S), [alpha] * len(S), upper,
                               objective={i: 1.0 for i in range(len(S))})
    for i, j, d in pairs:
        prog.add({i: 1.0, j: 1.0}, d)
    res = lpmod.solve(prog)
    if not res.optimal:
        return None
    radii = {i: 1.0 for i in range(n)}
    for p, i in pos.items():
        radii[p] = float(res.point[i])
    return math.fsum(1.0 - radii[p] for p in S), radii


def _edgeless_at_alpha(D: np.ndarray, S: set[int], alpha: float) -> bool:
    n = len(D)
    r = np.array([alpha if i in S else 1.0 for i in range(n)])
    hit = (r[:, None] + r[None, :]) > D
    np.fill_diagonal(hit, False)
    return not hit.any()


def oracle_independence(inst: Instance, cap: int = ORACLE_CAP) -> Verdict:
    """Brute-force ground truth for both independence variants."""
    if not inst.problem.is_independence:
        raise ValueError("oracle_independence needs an independence problem")
    if inst.n > cap:
        raise OracleSizeError(f"{inst.n} points exceed the oracle cap {cap}")
    n, k = inst.n, min(inst.k, inst.n)
    D = _dist_matrix(inst.points)
    if not inst.problem.is_min:
        for s in range(k + 1):
            for S in itertools.combinations(range(n), s):
                if _edgeless_at_alpha(D, set(S), inst.alpha):
                    sol = Solution.uniform(n, S, inst.alpha)
                    return _checked(inst, Verdict(True, sol, stats={"min_size": s}))
        return Verdict.no("no shrink set of size <= k")
    # a larger shrink set never costs more, so |S| = k suffices
    best = None
    for S in itertools.combinations(range(n), k):
        if not _edgeless_at_alpha(D, set(S), inst.alpha):
            continue
        res = independence_lp(inst.points, S, inst.alpha)
        if res is not None and (best is None or res[0] < best[0]):
            best = res
    if best is None:
        return Verdict.no("no feasible shrink set of size <= k")
    sol = Solution.from_radii(best[1])
    v = Verdict(_budget_ok(inst, best[0]), sol if _budget_ok(inst, best[0]) else None, best[0])
    if not v.answer:
        v.stats["reason"] = "optimal cost exceeds mu"
    return _checked(inst, v)


def guess_bound(t: int, k: int) -> int:
    return sum(math.comb(t, s) for s in range(min(k, t) + 1))


def fpt_min_independence(inst: Instance) -> Verdict:
    """Kernelize, then try every shrink set inside the kernel with one LP each."""
    if not inst.problem.is_independence:
        raise ValueError("fpt_min_independence needs an independence problem")
    if not inst.problem.is_min:
        return solve_independence(inst)
    ker = kernelize(inst)
    if ker.short_circuit:
        return Verdict.no("vertex cover gate", kernel_size=0, guesses=0, guess_bound=0)
    sub, index_map = inst.restrict(ker.kept)
    D = _dist_matrix(sub.points)
    guesses = 0
    best = None
    for s in range(min(inst.k, sub.n) + 1):
        for S in itertools.combinations(range(sub.n), s):
            guesses += 1
            if not _edgeless_at_alpha(D, set(S), inst.alpha):
                continue
            res = independence_lp(sub.points, S, inst.alpha)
            if res is not None and (best is None or res[0] < best[0] - 1e-12):
                best = res
    stats = {"kernel_size": ker.size, "guesses": guesses, "guess_bound": guess_bound(ker.size, inst.k)}
    if best is None:
        return Verdict.no("no feasible shrink set", **stats)
    ok = _budget_ok(inst, best[0])
    sol = Solution.lift(inst.n, Solution.from_radii(best[1]), index_map) if ok else None
    if not ok:
        stats["reason"] = "optimal cost exceeds mu"
    return _checked(inst, Verdict(ok, sol, best[0], stats))


# ------------------------------------------------------------------ acyclicity

class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def copy(self):
        uf = _UnionFind()
        uf.parent = dict(self.parent)
        return uf


def is_forest(edges) -> bool:
    uf = _UnionFind()
    return all(u != v and uf.union(u, v) for u, v in edges)


def maximal_acyclic_subsets(edges: Sequence[tuple], forced: Sequence[tuple] = ()) -> Iterator[list[int]]:
    """Index lists of maximal acyclic subsets of ``edges`` containing ``forced``.

    Assumes ``forced`` is itself acyclic. Self-loops are never kept.
    """
    base = _UnionFind()
    for u, v in forced:
        base.union(u, v)
    m = len(edges)

    def rec(i, uf, kept, skipped):
        if i == m:
            # maximality: every skipped edge must close a cycle
            if all(uf.find(edges[j][0]) == uf.find(edges[j][1]) for j in skipped):
                yield list(kept)
            return
        u, v = edges[i]
        if u != v and uf.find(u) != uf.find(v):
            uf2 = uf.copy()
            uf2.union(u, v)
            yield from rec(i + 1, uf2, kept + [i], skipped)
            yield from rec(i + 1, uf, kept, skipped + [i])
        else:
            yield from rec(i + 1, uf, kept, skipped)

    yield from rec(0, base, [], [])


def _edge_list_at(D: np.ndarray, radii: np.ndarray) -> list[tuple[int, int]]:
    hit = (radii[:, None] + radii[None, :]) > D
    iu = np.triu_indices(len(D), 1)
    mask = hit[iu]
    return list(zip(iu[0][mask].tolist(), iu[1][mask].tolist()))


def oracle_acyclicity(inst: Instance, cap: int = ACYC_ORACLE_CAP, edge_cap: int = ACYC_EDGE_CAP) -> Verdict:
    """Exact ground truth for both acyclicity variants on small instances."""
    if not inst.problem.is_acyclicity:
        raise ValueError("oracle_acyclicity needs an acyclicity problem")
    n, a = inst.n, inst.alpha
    if n > cap:
        raise OracleSizeError(f"{n} points exceed the oracle cap {cap}")
    g = unit_graph(inst.points, a)
    if len(g.edges) > edge_cap:
        raise OracleSizeError(f"{len(g.edges)} edges exceed the oracle cap {edge_cap}")
    D = _dist_matrix(inst.points)
    k = min(inst.k, n)

    def alpha_radii(S):
        r = np.ones(n)
        r[list(S)] = a
        return r

    if not inst.problem.is_min:
        for s in range(k + 1):
            for S in itertools.combinations(range(n), s):
                if is_forest(_edge_list_at(D, alpha_radii(S))):
                    return _checked(inst, Verdict(True, Solution.uniform(n, S, a), stats={"min_size": s}))
        return Verdict.no("no shrink set of size <= k")

    best = None
    for S in itertools.combinations(range(n), k):
        if not is_forest(_edge_list_at(D, alpha_radii(S))):
            continue
        Sset = set(S)
        removable, forced = [], []
        for (u, v), e in g.edges.items():
            inside = (u in Sset) + (v in Sset)
            ok = inside and e.nu is not NuClass.BOTTOM and (inside == 2 or e.dist >= 1.0 + a)
            (removable if ok else forced).append((u, v))
        for kept in maximal_acyclic_subsets(removable, forced):
            keep = set(kept)
            deleted = [removable[i] for i in range(len(removable)) if i not in keep]
            res = _deletion_lp(inst, S, deleted)
            if res is not None and (best is None or res[0] < best[0]):
                best = res
    if best is None:
        return Verdict.no("no feasible shrink set of size <= k")
    ok = _budget_ok(inst, best[0])
    v = Verdict(ok, Solution.from_radii(best[1]) if ok else None, best[0])
    if not ok:
        v.stats["reason"] = "optimal cost exceeds mu"
    return _checked(inst, v)


def _deletion_lp(inst: Instance, S: Sequence[int], deleted: Sequence[tuple[int, int]]):
    """Cheapest radii on S (others 1) that delete every edge in ``deleted``."""
    a, pts = inst.alpha, inst.points
    pos = {p: i for i, p in enumerate(S)}
    upper = [1.0] * len(S)
    prog = lpmod.LinearProgram(len(S), [a] * len(S), upper, objective={i: 1.0 for i in range(len(S))})
    for u, v in deleted:
        d = distance(pts[u], pts[v])
        if u in pos and v in pos:
            prog.add({pos[u]: 1.0, pos[v]: 1.0}, d)
        else:
            i = pos[u] if u in pos else pos[v]
            prog.add({i: 1.0}, d - 1.0)
    if not S:
        return 0.0, {i: 1.0 for i in range(inst.n)}
    res = lpmod.solve(prog)
    if not res.optimal:
        return None
    radii = {i: 1.0 for i in range(inst.n)}
    for p, i in pos.items():
        radii[p] = float(res.point[i])
    return math.fsum(1.0 - radii[p] for p in S), radii


@dataclass
class ForestGuess:
    forest_edges: frozenset[int]
    shrunk_core: frozenset[int]  # W
    removed_original: tuple[int, ...] = ()
    removed_reducible: dict[int, tuple[str, int]] = field(default_factory=dict)  # id -> (mode, count)


def _reducible_options(e: MultiEdge, W: frozenset[int], alpha: float) -> list[tuple[str, int]]:
    """Ways to break the path of ``e`` given the shrunk core set W, as (mode, count)."""
    opts = []
    for mode, p, d in (("start", e.u, e.d_start), ("end", e.v, e.d_end)):
        cls = edge_nu(d, alpha)
        if cls is NuClass.BOTTOM:
            continue
        if p in W and cls is NuClass.ONE:
            opts.append((mode, 0))
        if cls is NuClass.ONE or p in W:
            opts.append((mode, 1))
    if e.d_max is not None:
        cls = edge_nu(e.d_max, alpha)
        if cls is not NuClass.BOTTOM:
            opts.append(("max", cls.value))
    return opts


def _original_ok(e: MultiEdge, W: frozenset[int], alpha: float) -> bool:
    cls = edge_nu(e.dist, alpha)
    inside = (e.u in W) + (e.v in W)
    if cls is NuClass.BOTTOM:
        return False
    return inside >= cls.value


def _spanning_forests(core: Sequence[int], edges: Sequence[MultiEdge]) -> list[frozenset[int]]:
    pairs = [(e.u, e.v) for e in edges]
    return [frozenset(edges[i].id for i in kept) for kept in maximal_acyclic_subsets(pairs)]


def _guess_lp(comp: CompressResult, guess: ForestGuess, edges: dict[int, MultiEdge]):
    """Solve the cost LP for one guess; returns (cost, core radii, choices) or None."""
    a = comp.alpha
    W = sorted(guess.shrunk_core)
    pos = {w: i for i, w in enumerate(W)}
    ys = [eid for eid, (mode, c) in guess.removed_reducible.items() if mode != "max" and c == 1]
    ypos = {eid: len(W) + i for i, eid in enumerate(ys)}
    nv = len(W) + len(ys)
    objective = {i: 1.0 for i in range(len(W))}
    objective.update({j: -1.0 for j in ypos.values()})
    prog = lpmod.LinearProgram(nv, [a] * len(W) + [0.0] * len(ys), [1.0] * len(W) + [1.0 - a] * len(ys),
                               objective=objective)
    fixed = 0.0

    def row(coeffs, rhs):
        # move unshrunk core radii (fixed at 1) to the right-hand side
        live = {}
        for v, c in coeffs:
            if isinstance(v, str):
                live[ypos[int(v[1:])]] = live.get(ypos[int(v[1:])], 0.0) + c
            elif v in pos:
                live[pos[v]] = live.get(pos[v], 0.0) + c
            else:
                rhs -= c
        if not live:
            return rhs >= 0.0
        prog.add(live, rhs)
        return True

    for eid in guess.removed_original:
        e = edges[eid]
        if not row([(e.u, 1.0), (e.v, 1.0)], e.dist):
            return None
    for eid, (mode, c) in guess.removed_reducible.items():
        e = edges[eid]
        if mode == "max":
            fixed += 2.0 - e.d_max
            continue
        p, d = (e.u, e.d_start) if mode == "start" else (e.v, e.d_end)
        coeffs = [(p, 1.0)] + ([(f"y{eid}", -1.0)] if c else [])
        if not row(coeffs, d - 1.0):
            return None
    if nv:
        res = lpmod.solve(prog)
        if not res.optimal:
            return None
        x = res.point
    else:
        x = np.zeros(0)
    core_radii = {w: float(x[pos[w]]) for w in W}
    choices = {}
    for eid, (mode, c) in guess.removed_reducible.items():
        y = float(x[ypos[eid]]) if eid in ypos else 0.0
        choices[eid] = (mode, c, y)
    total = math.fsum([1.0 - r for r in core_radii.values()] + [y for _, _, y in choices.values()]
                      + [fixed, comp.fixed_cost])
    return total, core_radii, choices


def fpt_acyclicity(inst: Instance) -> Verdict:
    """Compress, then guess a spanning forest, a shrunk core set and per-edge removal modes."""
    if not inst.problem.is_acyclicity:
        raise ValueError("fpt_acyclicity needs an acyclicity problem")
    comp = compress(inst)
    if comp.short_circuit:
        return Verdict.no(comp.reason)
    g = comp.graph
    a, kb = inst.alpha, comp.k_remaining
    min_variant = inst.problem.is_min
    edges = {e.id: e for e in g.edges}
    core = sorted(g.core_vertices)
    forests = _spanning_forests(core, g.edges)
    cycle_count = inst.k - kb
    best = None  # (key, radii)
    guesses = lps = 0
    for F in forests:
        removed = [e for e in g.edges if e.id not in F]
        orig = [e for e in removed if e.kind == ORIGINAL]
        red = [e for e in removed if e.kind != ORIGINAL]
        for s in range(min(kb, len(core)) + 1):
            for Wt in itertools.combinations(core, s):
                W = frozenset(Wt)
                if not all(_original_ok(e, W, a) for e in orig):
                    continue
                opts = [_reducible_options(e, W, a) for e in red]
                if any(not o for o in opts):
                    continue
                if not min_variant:
                    need = s + sum(min(c for _, c in o) for o in opts)
                    if need > kb:
                        continue
                    guesses += 1
                    picks = {e.id: min(o, key=lambda t: t[1]) for e, o in zip(red, opts)}
                    choices = {eid: (m, c, 0.0) for eid, (m, c) in picks.items()}
                    key = need + cycle_count
                    if best is None or key < best[0]:
                        best = (key, comp.reconstruct({w: a for w in W}, choices, False))
                    continue
                for combo in itertools.product(*opts):
                    if s + sum(c for _, c in combo) > kb:
                        continue
                    guesses += 1
                    guess = ForestGuess(F, W, tuple(e.id for e in orig),
                                        {e.id: mc for e, mc in zip(red, combo)})
                    lps += 1
                    res = _guess_lp(comp, guess, edges)
                    if res is None:
                        continue
                    total, core_radii, choices = res
                    if best is None or total < best[0] - 1e-12:
                        best = (total, comp.reconstruct(core_radii, choices, True))
    stats = {"core": len(core), "forests": len(forests), "guesses": guesses, "lps": lps,
             "k_remaining": kb}
    if not core:
        # only isolated cycles (or nothing) survived compression
        radii = comp.reconstruct({}, {}, min_variant)
        best = (comp.fixed_cost if min_variant else cycle_count, radii)
    if best is None:
        return Verdict.no("no guess fits the budget", **stats)
    sol = Solution.from_radii(best[1])
    if not min_variant:
        return _checked(inst, Verdict(True, sol, stats={**stats, "min_size": best[0]}))
    ok = _budget_ok(inst, best[0])
    v = Verdict(ok, sol if ok else None, best[0], stats)
    if not ok:
        v.stats["reason"] = "optimal cost exceeds mu"
    return _checked(inst, v)


# ---------------------------------------------------------------- connectivity

def connectivity_degree_threshold(alpha: float, k: int) -> float:
    return 9.0 * (4.0 / alpha + 1.0) ** 2 + 9.0 + k


def _connected(D: np.ndarray, radii: np.ndarray) -> bool:
    n = len(D)
    if n <= 1:
        return True
    adj = (radii[:, None] + radii[None, :]) >= D
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


def mark_unshrinkable(inst: Instance) -> frozenset[int]:
    """Points whose shrinking alone (others unit) disconnects the graph."""
    D = _dist_matrix(inst.points)
    marked = set()
    for p in range(inst.n):
        r = np.ones(inst.n)
        r[p] = inst.alpha
        if not _connected(D, r):
            marked.add(p)
    return frozenset(marked)


def solve_connectivity(inst: Instance, node_cap: int = 10**6) -> Verdict:
    """Decide whether at least k disks can shrink to alpha keeping the graph connected."""
    if inst.problem is not Problem.SHRINK_CONNECTIVITY:
        raise ValueError("solve_connectivity handles shrink-connectivity only")
    n, a, k = inst.n, inst.alpha, inst.k
    D = _dist_matrix(inst.points)
    if not _connected(D, np.ones(n)):
        return Verdict.no("unit disk graph is disconnected")
    if k > n:
        return Verdict.no("k exceeds the number of points")
    marked = mark_unshrinkable(inst)
    stats: dict = {"unshrinkable": len(marked)}
    degrees = ((2.0 >= D).sum(axis=1) - 1) if n else np.zeros(0)
    cand = sorted((p for p in range(n) if p not in marked), key=lambda p: (-int(degrees[p]), p))
    radii = np.ones(n)

    if n and degrees.max() >= connectivity_degree_threshold(a, k):
        hub = int(np.argmax(degrees))
        near = D[hub] <= 2.0
        chosen = []
        for p in sorted(cand, key=lambda q: not near[q]):  # stable: keeps degree order
            if len(chosen) >= k:
                break
            radii[p] = a
            if _connected(D, radii):
                chosen.append(p)
            else:
                radii[p] = 1.0
        stats["gate"] = "large degree"
        if len(chosen) < k:
            stats["witness_missing"] = True
            return Verdict(True, None, stats=stats)
        return _checked(inst, Verdict(True, Solution.uniform(n, chosen, a), stats=stats))

    if len(cand) < k:
        return Verdict.no("too few shrinkable points", **stats)
    nodes = 0
    chosen: list[int] = []

    class _Cap(Exception):
        pass

    def rec(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise _Cap()
        if len(chosen) >= k:
            return True
        if len(chosen) + len(cand) - i < k:
            return False
        p = cand[i]
        radii[p] = a
        if _connected(D, radii):
            chosen.append(p)
            if rec(i + 1):
                return True
            chosen.pop()
        radii[p] = 1.0
        return rec(i + 1)

    try:
        found = rec(0)
    except _Cap:
        stats["nodes"] = nodes
        return Verdict(False, None, stats={**stats, "reason": "inconclusive at node cap"}, inconclusive=True)
    stats["nodes"] = nodes
    if not found:
        return Verdict.no("no connected shrink set of size k", **stats)
    return _checked(inst, Verdict(True, Solution.uniform(n, chosen, a), stats=stats))


def oracle_connectivity(inst: Instance, cap: int = ORACLE_CAP) -> Verdict:
    """Exhaustive enumeration of size-k shrink sets (monotone property)."""
    if inst.n > cap:
        raise OracleSizeError(f"{inst.n} points exceed the oracle cap {cap}")
    n, a, k = inst.n, inst.alpha, inst.k
    D = _dist_matrix(inst.points)
    if k > n:
        return Verdict.no("k exceeds the number of points")
    for S in itertools.combinations(range(n), k):
        r = np.ones(n)
        r[list(S)] = a
        if _connected(D, r):
            return _checked(inst, Verdict(True, Solution.uniform(n, S, a)))
    return Verdict.no("no connected shrink set of size k")


def solve(inst: Instance) -> Verdict:
    """Dispatch to the exact FPT solver for the instance's problem."""
    p = inst.problem
    if p.is_independence:
        return fpt_min_independence(inst)
    if p.is_acyclicity:
        return fpt_acyclicity(inst)
    if p is Problem.SHRINK_CONNECTIVITY:
        return solve_connectivity(inst)
    raise NotImplementedError("expansion to connectivity has no solver")
