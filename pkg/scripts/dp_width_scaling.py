"""Decomposition width and acyclicity DP running time as random point sets grow.

Prints a TSV table: n, box side, mean width, max width, mean DP seconds.
"""

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from diskshrink.geometry import unit_graph
from diskshrink.generators import random_points
from diskshrink.treewidth import decompose, dp_acyclicity


@dataclass
class Config:
    sizes: tuple[int, ...] = (10, 20, 40, 80)
    density: float = 0.6  # points per unit area
    trials: int = 5
    alpha: float = 0.5
    seed: int = 0


def run(cfg: Config) -> list[tuple]:
    rng = random.Random(cfg.seed)
    rows = []
    for n in cfg.sizes:
        box = (n / cfg.density) ** 0.5
        widths, times = [], []
        for _ in range(cfg.trials):
            inst = random_points(n, box, seed=rng.randrange(10**9), alpha=cfg.alpha, k=n)
            g = unit_graph(inst.points)
            td = decompose(n, g.edges)
            widths.append(td.width)
            t0 = time.perf_counter()
            dp_acyclicity(inst, td)
            times.append(time.perf_counter() - t0)
        rows.append((n, round(box, 3), statistics.mean(widths), max(widths), statistics.mean(times)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    ap.add_argument("--density", type=float, default=Config.density)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    cfg = Config(tuple(a.sizes), a.density, a.trials, seed=a.seed)
    print("n\tbox\tmean_width\tmax_width\tdp_seconds")
    for n, box, mw, xw, t in run(cfg):
        print(f"{n}\t{box}\t{mw:.2f}\t{xw}\t{t:.4f}")


if __name__ == "__main__":
    main()
