"""Compare the tree-side formula for a meridian twist with its infinitesimal representation."""

import argparse
import time
from dataclasses import dataclass

from handlebody.diagrams import kk_rhs
from handlebody.envelope import special_construct
from handlebody.johnson import varrho
from handlebody.words import twist_alpha, twist_boundary, zeta


@dataclass
class Config:
    genus: int = 3
    degree: int = 3
    boundary_degree: int = 2


def run(cfg: Config):
    g = cfg.genus
    theta = special_construct(g, cfg.degree + 1)
    cases = [(f"alpha_{i}", (i,), twist_alpha(g, i), cfg.degree) for i in range(1, g + 1)]
    cases.append(("boundary", zeta(g), twist_boundary(g), cfg.boundary_degree))
    for name, u, f, N in cases:
        t = time.perf_counter()
        ok = kk_rhs(theta, u, N).truncate(N) == varrho(f, theta, N).truncate(N)
        print(f"{name:10s} N={N} equal={ok} {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--genus", type=int, default=3)
    p.add_argument("--deg", type=int, default=3)
    a = p.parse_args()
    run(Config(a.genus, a.deg, min(a.deg, 2)))
