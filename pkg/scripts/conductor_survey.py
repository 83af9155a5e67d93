"""Conductors of random subalgebras k[f_1, ..., f_m] of k[y].

For each sample: the fraction y = g/h, n = deg h, D = deg h^(n-1), the
conductor generator u, and whether the certificate (u divides h^(n-1), u y^j in A) went through.
"""

import argparse
import random
import time
from dataclasses import dataclass

from akinv.conductor import CurveSubalgebra, FractionNotFound, conductor_generator
from akinv.field import GF, QQ


@dataclass
class Config:
    samples: int = 12
    seed: int = 0
    max_exponent: int = 5
    char: int = 0


def random_gens(rng: random.Random, cfg: Config) -> list:
    # a semigroup-like algebra shifted to a random point, plus a random perturbation
    c = rng.randint(-2, 2)
    k = rng.randint(2, cfg.max_exponent - 1)
    exps = sorted({k, rng.randint(k + 1, cfg.max_exponent)})
    base = "y" if c == 0 else f"(y {'-' if c > 0 else '+'} {abs(c)})"
    gens = [f"{base}^{e}" for e in exps]
    if rng.random() < 0.5:
        gens[-1] += f" + {rng.randint(1, 3)}*{base}^{exps[0]}"
    return gens


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    field = QQ if cfg.char == 0 else GF(cfg.char)
    print(f"{'generators':44s} {'n':>2s} {'D':>3s} {'deg u':>5s} {'u':28s} cert  secs")
    for _ in range(cfg.samples):
        gens = random_gens(rng, cfg)
        A = CurveSubalgebra(gens, field=field)
        t0 = time.perf_counter()
        try:
            res = conductor_generator(A)
        except FractionNotFound:
            print(f"{', '.join(gens):44s} y is not a fraction of A")
            continue
        ok = res.certificate["u_divides_h_power"] and res.certificate["u_multiples_in_A"]
        print(f"{', '.join(gens):44s} {res.n:2d} {res.ideal_degree:3d} {int(res.u.degree_in(A.var)):5d} {str(res.u):28s} "
              f"{'ok' if ok else 'FAIL':4s} {time.perf_counter() - t0:5.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--max-exponent", type=int, default=Config.max_exponent)
    ap.add_argument("--char", type=int, default=Config.char)
    a = ap.parse_args()
    main(Config(a.samples, a.seed, a.max_exponent, a.char))
