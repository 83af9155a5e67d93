"""Degree facts on the standard fixtures, sampled over random elements.

Reports the minimal positive degree n, how many sampled degrees are
divisible by n, and how often the invariant rewrite reconstructs a.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from akinv.fixtures import all_fixtures, random_element
from akinv.invariant import default_pool, minimal_positive_degree, rewrite_in_invariants


@dataclass
class Config:
    samples: int = 100
    seed: int = 1
    degree: int = 4


def main(cfg: Config) -> None:
    print(f"{'fixture':18s} {'x':10s} n  divisible  rewrites  degree histogram")
    for fx in all_fixtures():
        rng = random.Random(f"{cfg.seed}/{fx.name}")
        x, n = minimal_positive_degree(fx.phi, default_pool(fx.algebra))
        hist: Counter = Counter()
        div = rw_ok = 0
        for _ in range(cfg.samples):
            a = random_element(fx.algebra, rng, degree=cfg.degree)
            d = fx.phi.phi_degree(a)
            hist[d] += 1
            div += d == float("-inf") or int(d) % n == 0
            rw_ok += rewrite_in_invariants(fx.phi, a, x, n).check(fx.phi)
        shown = " ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
        print(f"{fx.name:18s} {str(x):10s} {n}  {div:4d}/{cfg.samples}  {rw_ok:4d}/{cfg.samples}  {shown}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--degree", type=int, default=Config.degree)
    a = ap.parse_args()
    main(Config(a.samples, a.seed, a.degree))
