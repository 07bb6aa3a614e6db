"""Seeded instance generators.

Random coordinates are integers on a 1/1000 grid divided by 1000, so the same
seed gives the same floats everywhere.
"""

from __future__ import annotations

import math
import random

from diskshrink.geometry import Point
from diskshrink.model import Instance, Problem

KINDS = ("random", "path", "cycle", "grid-cluster", "planted")
SCALE = 1000


def _grid_coord(rng: random.Random, extent: float) -> float:
    return rng.randint(0, int(round(extent * SCALE))) / SCALE


def _instance(points, problem, alpha, k, mu, meta=None) -> Instance:
    problem = Problem(problem)
    if problem.is_min and mu is None:
        mu = float(len(points))
    if not problem.is_min:
        mu = None
    return Instance(tuple(points), problem, alpha, k, mu, meta=meta or {})


def random_points(n: int, box: float = 6.0, seed: int = 0, problem="shrink-independence",
                  alpha: float = 0.5, k: int = 1, mu: float | None = None) -> Instance:
    if n < 0 or box <= 0:
        raise ValueError("need n >= 0 and box > 0")
    rng = random.Random(seed)
    pts = [Point(_grid_coord(rng, box), _grid_coord(rng, box)) for _ in range(n)]
    return _instance(pts, problem, alpha, k, mu, {"kind": "random", "seed": seed})


def path(n: int, spacing: float = 1.5, problem="shrink-independence", alpha: float = 0.5,
         k: int = 1, mu: float | None = None) -> Instance:
    if n < 0 or spacing <= 0:
        raise ValueError("need n >= 0 and spacing > 0")
    pts = [Point(i * spacing, 0.0) for i in range(n)]
    return _instance(pts, problem, alpha, k, mu, {"kind": "path"})


def cycle(n: int, spacing: float = 1.9, problem="shrink-acyclicity", alpha: float = 0.5,
          k: int = 1, mu: float | None = None) -> Instance:
    """Regular n-gon with side length ``spacing``."""
    if n < 3 or spacing <= 0:
        raise ValueError("need n >= 3 and spacing > 0")
    R = spacing / (2.0 * math.sin(math.pi / n))
    pts = [Point(R * math.cos(2 * math.pi * i / n), R * math.sin(2 * math.pi * i / n)) for i in range(n)]
    return _instance(pts, problem, alpha, k, mu, {"kind": "cycle"})


def grid_cluster(clusters: int = 3, per_cluster: int = 4, spread: float = 0.8, gap: float = 5.0,
                 seed: int = 0, problem="shrink-independence", alpha: float = 0.5, k: int = 1,
                 mu: float | None = None) -> Instance:
    """Tight clusters placed on a coarse grid ``gap`` apart."""
    if clusters < 0 or per_cluster < 0 or spread <= 0:
        raise ValueError("need non-negative counts and spread > 0")
    rng = random.Random(seed)
    side = max(1, math.ceil(math.sqrt(clusters)))
    pts = []
    for c in range(clusters):
        cx, cy = (c % side) * gap, (c // side) * gap
        for _ in range(per_cluster):
            pts.append(Point(cx + _grid_coord(rng, spread), cy + _grid_coord(rng, spread)))
    return _instance(pts, problem, alpha, k, mu, {"kind": "grid-cluster", "seed": seed})


def planted(k: int, alpha: float = 0.5, seed: int = 0, problem="shrink-independence",
            slack: float = 0.0, gap: float = 6.0) -> Instance:
    """k far-apart edges that each need exactly one shrunk endpoint.

    Each edge length lies in [1 + alpha, 2), so the optimum shrinks one point per
    edge to radius d - 1; ``meta`` records the optimal count and cost.
    """
    problem = Problem(problem)
    if not problem.is_independence:
        raise ValueError("planted instances are independence instances")
    if not 0 < alpha < 1:
        raise ValueError("planted instances need 0 < alpha < 1")
    rng = random.Random(seed)
    lo = 1.0 + alpha
    pts, opt_cost = [], 0.0
    for i in range(k):
        # integer-grid length strictly inside [1 + alpha, 2)
        lo_i, hi_i = math.ceil(lo * SCALE) + 1, 2 * SCALE - 1
        d = rng.randint(lo_i, hi_i) / SCALE
        x0 = i * gap
        pts += [Point(x0, 0.0), Point(x0 + d, 0.0)]
        opt_cost += 2.0 - d
    meta = {"kind": "planted", "seed": seed, "opt_size": k, "opt_cost": opt_cost}
    mu = opt_cost * (1.0 + slack) if problem.is_min else None
    return Instance(tuple(pts), problem, alpha, k, mu, meta=meta)


def generate(kind: str, **params) -> Instance:
    table = {"random": random_points, "path": path, "cycle": cycle,
             "grid-cluster": grid_cluster, "planted": planted}
    if kind not in table:
        raise ValueError(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
    return table[kind](**params)


def corpus() -> list[tuple[str, Instance]]:
    """Fixed small instances covering every problem variant, for smoke runs and benches."""
    out = [
        ("planted-k2", planted(2, seed=1)),
        ("planted-min-k3", planted(3, seed=2, problem="min-shrink-independence", slack=0.1)),
        ("planted-k4", planted(4, alpha=0.3, seed=3)),
        ("path-indep", path(5, 1.5, k=2)),
        ("path-min-indep", path(4, 1.8, problem="min-shrink-independence", k=2, mu=0.6)),
        ("path-conn", path(6, 1.4, problem="shrink-connectivity", k=3)),
        ("path-conn-touching", path(4, 2.0, problem="shrink-connectivity", k=1)),
        ("hexagon", cycle(6, 1.9, k=1)),
        ("hexagon-tight", cycle(6, 1.2, k=2)),
        ("hexagon-min", cycle(6, 1.9, problem="min-shrink-acyclicity", k=1, mu=0.2)),
        ("pentagon-indep", cycle(5, 1.8, problem="shrink-independence", k=3)),
        ("octagon-min", cycle(8, 1.6, problem="min-shrink-acyclicity", k=2, mu=1.0)),
    ]
    for s in range(3):
        out.append((f"random-indep-{s}", random_points(8, 9.0, seed=s, k=3)))
        out.append((f"random-acyc-{s}", random_points(8, 5.0, seed=10 + s, problem="shrink-acyclicity", k=3)))
    out.append(("random-min-acyc", random_points(7, 5.0, seed=20, problem="min-shrink-acyclicity", k=2, mu=1.5)))
    out.append(("clusters-conn", grid_cluster(3, 3, spread=0.8, gap=1.8, problem="shrink-connectivity", k=4)))
    return out
