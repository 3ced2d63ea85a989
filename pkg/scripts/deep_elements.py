"""Search twist commutators [T_a_i, h T_a_1 h^-1] for elements deep in the filtration."""

import argparse
import random
import time
from dataclasses import dataclass

from handlebody.johnson import jf_degree_beta
from handlebody.words import PI, commutator_endo, handle_slide, handle_swap, identity, twist_alpha


@dataclass
class Config:
    genus: int = 3
    trials: int = 100
    max_len: int = 4
    N: int = 4
    seed: int = 3


def run(cfg: Config):
    g = cfg.genus
    rng = random.Random(cfg.seed)
    A = [twist_alpha(g, i) for i in range(1, g + 1)]
    gens = {f"L{i}": handle_slide(g, i) for i in range(1, g)}
    gens.update({f"W{i}": handle_swap(g, i) for i in range(1, g)})
    for _ in range(cfg.trials):
        names = [rng.choice(sorted(gens)) for _ in range(rng.randint(1, cfg.max_len))]
        signs = [rng.choice([1, -1]) for _ in names]
        h = identity(PI(g))
        for n, s in zip(names, signs):
            h = h @ (gens[n] if s > 0 else gens[n].inverse())
        for i in range(g):
            c = commutator_endo(A[i], h @ A[0] @ h.inverse())
            if all(c.images[k] == (k + 1,) for k in range(2 * g)):
                continue
            t = time.perf_counter()
            d = jf_degree_beta(c, cfg.N)
            print(names, signs, f"i={i + 1}", f"degree={d}", f"{time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--deg", type=int, default=4)
    a = p.parse_args()
    run(Config(trials=a.trials, N=a.deg))
