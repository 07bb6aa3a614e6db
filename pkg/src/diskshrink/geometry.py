"""Planar primitives: distances, edge classification and disk graphs."""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate in {self!r}")


class NuClass(enum.Enum):
    """How many endpoints of a unit-graph edge must shrink to alpha to remove it."""

    ONE = 1
    TWO = 2
    BOTTOM = None  # irremovable

    @property
    def count(self) -> float:
        return math.inf if self is NuClass.BOTTOM else self.value


class DiskModel(str, enum.Enum):
    OPEN = "open"
    CLOSED = "closed"


def distance(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def nu(d: float, alpha: float, eps: float = 0.0) -> NuClass:
    """Classify an edge of length ``d`` for shrink factor ``alpha``.

    The comparisons are written as radius sums (``alpha + alpha``, ``1 + alpha``)
    so they agree bit-for-bit with :func:`disks_intersect` on radii in {alpha, 1}.
    ``eps`` widens the irremovable band for inputs engineered near 2*alpha.
    """
    if not (0.0 < d <= 2.0):
        raise ValueError(f"nu is defined on (0, 2], got d={d!r}")
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    if alpha + alpha > d - eps:
        return NuClass.BOTTOM
    if 1.0 + alpha > d:
        return NuClass.TWO
    return NuClass.ONE


def edge_nu(d: float, alpha: float, eps: float = 0.0) -> NuClass:
    """Like :func:`nu` but classifies coincident points (d == 0) as irremovable."""
    if d == 0.0:
        return NuClass.BOTTOM
    return nu(d, alpha, eps)


def disks_intersect(r1: float, r2: float, d: float, model: DiskModel = DiskModel.OPEN,
                    tol: float = 0.0) -> bool:
    """Intersection predicate for two disks whose centres are ``d`` apart.

    ``tol`` shifts the boundary in favour of "no edge" for open disks and in
    favour of "edge" for closed disks (used to absorb LP round-off).
    """
    if model is DiskModel.OPEN:
        return r1 + r2 > d + tol
    return r1 + r2 >= d - tol


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    dist: float
    nu: NuClass | None  # None when alpha was not supplied


@dataclass
class DiskGraph:
    n: int
    edges: dict[tuple[int, int], Edge] = field(default_factory=dict)

    def __post_init__(self):
        self._adj = None

    @property
    def adj(self) -> list[set[int]]:
        if self._adj is None:
            adj = [set() for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def edge(self, u: int, v: int) -> Edge:
        return self.edges[(min(u, v), max(u, v))]

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def build_disk_graph(points: Sequence[Point], radii: Mapping[int, float] | Sequence[float] | None = None,
                     model: DiskModel = DiskModel.OPEN, alpha: float | None = None,
                     tol: float = 0.0) -> DiskGraph:
    """Intersection graph of disks centred at ``points``.

    ``radii`` defaults to all-ones (the unit disk graph). When ``alpha`` is given,
    every edge is tagged with its nu class (edges longer than 2 cannot occur for
    radii <= 1).
    """
    n = len(points)
    if radii is None:
        rad = [1.0] * n
    elif isinstance(radii, Mapping):
        rad = [float(radii[i]) for i in range(n)]
    else:
        rad = [float(r) for r in radii]
    if any(r < 0 for r in rad):
        raise ValueError("radii must be non-negative")
    model = DiskModel(model)
    g = DiskGraph(n)
    reach = 2.0 * max(rad, default=0.0)
    if n > 64:
        cand = _grid_pairs(points, reach * (1.0 + 1e-9) + tol)
    else:
        cand = ((i, j) for i in range(n) for j in range(i + 1, n))
    for i, j in cand:
        d = distance(points[i], points[j])
        if disks_intersect(rad[i], rad[j], d, model, tol):
            c = None
            if alpha is not None and d <= 2.0:
                c = edge_nu(d, alpha)
            g.edges[(i, j)] = Edge(i, j, d, c)
    return g


def unit_graph(points: Sequence[Point], alpha: float | None = None,
               model: DiskModel = DiskModel.OPEN) -> DiskGraph:
    return build_disk_graph(points, None, model, alpha)


def _grid_pairs(points: Sequence[Point], reach: float):
    if reach <= 0:
        reach = 1.0
    cells = unit_cells(points, reach, Point(0.0, 0.0))
    for (cx, cy), members in cells.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                other = cells.get((cx + dx, cy + dy))
                if not other:
                    continue
                for i in members:
                    for j in other:
                        if i < j:
                            yield i, j


def unit_cells(points: Sequence[Point], side: float, origin: Point = Point(0.0, 0.0)) -> dict[tuple[int, int], set[int]]:
    """Bucket point indices into half-open square cells of the given side."""
    if side <= 0:
        raise ValueError("cell side must be positive")
    cells: dict[tuple[int, int], set[int]] = defaultdict(set)
    for i, p in enumerate(points):
        key = (math.floor((p.x - origin.x) / side), math.floor((p.y - origin.y) / side))
        cells[key].add(i)
    return dict(cells)
