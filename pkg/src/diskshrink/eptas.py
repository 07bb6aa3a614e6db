"""Shifted-grid approximation scheme for shrinking to independence.

Cardinality variant: at most (1+eps)k shrunk points. Min variant: bicriteria,
at most (1+eps)k points and cost at most (1+eps) times the optimum.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from diskshrink.geometry import Point, distance
from diskshrink.model import Instance, Solution, Verdict
from diskshrink.solvers import independence_lp

GUESS_CAP = 10**7


class CellRefusal(RuntimeError):
    def __init__(self, cell, combos):
        super().__init__(f"cell {cell}: {combos} guess combinations exceed the cap")
        self.cell = cell
        self.combos = combos


def grid_ell(eps: float) -> int:
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return math.ceil(16.0 / eps)


@dataclass(frozen=True)
class ShiftedGrid:
    ell: int
    shift: tuple[int, int]

    @property
    def side(self) -> int:
        return 2 * self.ell

    @property
    def origin(self) -> tuple[float, float]:
        return (-2.0 * self.shift[0], -2.0 * self.shift[1])

    def cell_bounds(self, cell: tuple[int, int]) -> tuple[float, float, float, float]:
        ox, oy = self.origin
        s = self.side
        return ox + cell[0] * s, oy + cell[1] * s, ox + (cell[0] + 1) * s, oy + (cell[1] + 1) * s

    def cells_near(self, p: Point, reach: float = 1.0) -> list[tuple[int, int]]:
        """Cells whose closed square lies within ``reach`` of ``p``."""
        ox, oy = self.origin
        s = self.side
        xs = range(math.floor((p.x - reach - ox) / s), math.floor((p.x + reach - ox) / s) + 1)
        ys = range(math.floor((p.y - reach - oy) / s), math.floor((p.y + reach - oy) / s) + 1)
        return [(cx, cy) for cx in xs for cy in ys if self.gap(p, (cx, cy)) <= reach]

    def gap(self, p: Point, cell: tuple[int, int]) -> float:
        x0, y0, x1, y1 = self.cell_bounds(cell)
        dx = max(x0 - p.x, 0.0, p.x - x1)
        dy = max(y0 - p.y, 0.0, p.y - y1)
        return math.hypot(dx, dy)

    def expanded_cells(self, points: Sequence[Point]) -> dict[tuple[int, int], frozenset[int]]:
        """Cell -> indices of points within distance 1 of the closed cell."""
        out: dict[tuple[int, int], set[int]] = defaultdict(set)
        for i, p in enumerate(points):
            for c in self.cells_near(p):
                out[c].add(i)
        return {c: frozenset(v) for c, v in sorted(out.items())}


@dataclass
class CellTable:
    members: tuple[int, ...]
    # rows[t] = (cost, radii over members) or None; non-increasing in t
    rows: list[tuple[float, dict[int, float]] | None] = field(default_factory=list)
    guesses: int = 0


def _sub_cell_options(members: Sequence[int], points: Sequence[Point], global_counts: dict,
                      eps: float) -> list[list[frozenset[int]]]:
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i in members:
        groups[(math.floor(points[i].x), math.floor(points[i].y))].append(i)
    large = 1.0 + 4.0 / eps
    opts = []
    for key in sorted(groups):
        pts = sorted(groups[key])
        full = frozenset(pts)
        if global_counts[key] >= large:
            opts.append([full])
            continue
        cand = {frozenset(), full}
        cand.update(full - {p} for p in pts)
        opts.append(sorted(cand, key=lambda s: (len(s), sorted(s))))
    return opts


def solve_cell(inst: Instance, members: Sequence[int], budget: int, eps: float,
               global_counts: dict | None = None, cap: int = GUESS_CAP, cell=None) -> CellTable:
    """Best (cost, radii) over the cell's expanded point set for each budget t <= ``budget``."""
    pts, a = inst.points, inst.alpha
    members = tuple(sorted(members))
    if global_counts is None:
        global_counts = _lattice_counts(pts)
    table = CellTable(members, [None] * (budget + 1))
    if not members:
        table.rows = [(0.0, {})] * (budget + 1)
        return table
    opts = _sub_cell_options(members, pts, global_counts, eps)
    combos = math.prod(len(o) for o in opts)
    if combos > cap:
        raise CellRefusal(cell, combos)
    local = [pts[i] for i in members]
    pos = {p: j for j, p in enumerate(members)}
    best_by_size: dict[int, tuple[float, dict[int, float]]] = {}

    def compatible(p, p_in, q, q_in):
        d = distance(pts[p], pts[q])
        rp = a if p_in else 1.0
        rq = a if q_in else 1.0
        return not rp + rq > d

    decided: list[tuple[int, bool]] = []

    def rec(i: int, size: int):
        if size > budget:
            return
        if i == len(opts):
            table.guesses += 1
            S = [pos[p] for p, s in decided if s]
            if inst.problem.is_min:
                res = independence_lp(local, S, a)
                if res is None:
                    return
                cost, radii = res
                radii = {members[j]: r for j, r in radii.items()}
            else:
                cost = 0.0
                radii = {p: (a if s else 1.0) for p, s in decided}
            cur = best_by_size.get(size)
            if cur is None or cost < cur[0]:
                best_by_size[size] = (cost, radii)
            return
        group = set().union(*opts[i])
        for choice in opts[i]:
            added = [(p, p in choice) for p in sorted(group)]
            ok = all(compatible(p, ps, q, qs) for (p, ps), (q, qs) in itertools.combinations(added, 2))
            ok = ok and all(compatible(p, ps, q, qs) for p, ps in added for q, qs in decided)
            if not ok:
                continue
            decided.extend(added)
            rec(i + 1, size + len(choice))
            del decided[len(decided) - len(added):]

    rec(0, 0)
    best = None
    for t in range(budget + 1):
        cand = best_by_size.get(t)
        if cand is not None and (best is None or cand[0] < best[0]):
            best = cand
        table.rows[t] = best
    return table


def _lattice_counts(points: Sequence[Point]) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for p in points:
        counts[(math.floor(p.x), math.floor(p.y))] += 1
    return counts


def combine(tables: Sequence[CellTable], budget: int):
    """Min-cost composition over cells; returns per-budget (cost, radii) or None."""
    B: list[tuple[float, dict[int, float]] | None] = [(0.0, {})] * (budget + 1)
    for tab in tables:
        nxt: list = [None] * (budget + 1)
        for kp in range(budget + 1):
            best = None
            for t in range(kp + 1):
                left, right = B[kp - t], tab.rows[t]
                if left is None or right is None:
                    continue
                c = left[0] + right[0]
                if best is None or c < best[0]:
                    best = (c, left, right)
            if best is not None:
                radii = dict(best[1][1])
                for p, r in best[2][1].items():
                    radii[p] = min(r, radii.get(p, 1.0))
                nxt[kp] = (best[0], radii)
        B = nxt
    return B


def _final_cost(radii: dict[int, float]) -> float:
    return math.fsum(1.0 - r for r in radii.values() if r < 1.0)


def eptas_independence(inst: Instance, eps: float, cap: int = GUESS_CAP) -> Verdict:
    if not inst.problem.is_independence:
        raise ValueError("the approximation scheme handles independence problems")
    ell = grid_ell(eps)
    n, k = inst.n, inst.k
    budget = math.ceil((1.0 + eps) * k - 1e-9)
    limit = math.floor((1.0 + eps) * k + 1e-9)
    mu_limit = (1.0 + eps) * inst.mu if inst.problem.is_min else None
    counts = _lattice_counts(inst.points)
    memo: dict[frozenset[int], CellTable] = {}
    stats = {"ell": ell, "shifts": (2 * ell) ** 2, "budget": budget, "size_limit": limit}
    best = None  # (cost, size, radii, shift)
    for i in range(2 * ell):
        for j in range(2 * ell):
            grid = ShiftedGrid(ell, (i, j))
            tables = []
            try:
                for cell, members in grid.expanded_cells(inst.points).items():
                    if members not in memo:
                        memo[members] = solve_cell(inst, members, budget, eps, counts, cap, cell)
                    tables.append(memo[members])
            except CellRefusal as exc:
                stats.update(refused_cell=exc.cell, combos=exc.combos, shift=(i, j))
                return Verdict(False, None, stats={**stats, "reason": str(exc)}, inconclusive=True)
            row = combine(tables, budget)[limit]
            if row is None:
                continue
            radii = {p: row[1].get(p, 1.0) for p in range(n)}
            size = sum(1 for r in radii.values() if r != 1.0)
            cost = _final_cost(radii)
            if best is None or (cost, size) < (best[0], best[1]):
                best = (cost, size, radii, (i, j))
    stats["cells_solved"] = len(memo)
    stats["guesses"] = sum(t.guesses for t in memo.values())
    if best is None:
        return Verdict.no("every shift failed", **stats)
    cost, size, radii, shift = best
    stats["best_shift"] = shift
    if mu_limit is not None and cost > mu_limit + 1e-9 * max(1, n):
        return Verdict.no("cost exceeds (1+eps) mu", optimum_estimate=cost, **stats)
    sol = Solution(frozenset(p for p, r in radii.items() if r != 1.0), radii)
    return Verdict(True, sol, cost if inst.problem.is_min else None, stats)
