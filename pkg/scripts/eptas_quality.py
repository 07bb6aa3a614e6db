"""Compare the approximation scheme with the exact optimum on planted instances.

For each eps, reports how often the returned shrink set exceeds k and the
worst observed cost ratio against the known optimum.
"""

import argparse
import time
from dataclasses import dataclass

from diskshrink.eptas import eptas_independence
from diskshrink.generators import planted


@dataclass
class Config:
    eps_values: tuple[float, ...] = (1.0, 0.5)
    k_values: tuple[int, ...] = (1, 2, 3, 4)
    seeds: int = 5
    alpha: float = 0.5


def run(cfg: Config) -> list[tuple]:
    rows = []
    for eps in cfg.eps_values:
        over_k, worst, elapsed, count = 0, 1.0, 0.0, 0
        for k in cfg.k_values:
            for seed in range(cfg.seeds):
                inst = planted(k, cfg.alpha, seed, problem="min-shrink-independence")
                t0 = time.perf_counter()
                v = eptas_independence(inst, eps)
                elapsed += time.perf_counter() - t0
                count += 1
                over_k += v.size > k
                worst = max(worst, v.optimum_cost / inst.meta["opt_cost"])
        rows.append((eps, count, over_k, worst, elapsed / count))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, nargs="+", default=list(Config.eps_values))
    ap.add_argument("--k", type=int, nargs="+", default=list(Config.k_values))
    ap.add_argument("--seeds", type=int, default=Config.seeds)
    a = ap.parse_args()
    cfg = Config(tuple(a.eps), tuple(a.k), a.seeds)
    print("eps\tinstances\tsize_over_k\tworst_cost_ratio\tmean_seconds")
    for eps, count, over, worst, t in run(cfg):
        print(f"{eps}\t{count}\t{over}\t{worst:.4f}\t{t:.3f}")


if __name__ == "__main__":
    main()
