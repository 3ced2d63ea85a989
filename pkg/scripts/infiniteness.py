"""Rank of the projected brackets of the ell_n trees, by degree and exponent range."""

import argparse
import itertools
from dataclasses import dataclass

from handlebody.acceptance import _pattern, _tree_word, exact_rank
from handlebody.diagrams import eta_tree, project_mod_R, words_with_exponents
from handlebody._tensor import is_lyndon


@dataclass
class Config:
    max_exponent: int = 3
    degrees: tuple = (2, 3)


def run(cfg: Config):
    exps = range(cfg.max_exponent + 1)
    for k in cfg.degrees:
        values, agree = [], 0
        tuples = [ns for ns in itertools.product(exps, repeat=k) if is_lyndon(ns, int)]
        for ns in tuples:
            p = _pattern(ns)
            rooted, rest = project_mod_R(eta_tree(_tree_word(p, ns), 3))
            agree += rooted == words_with_exponents(p, ns) and not any(rest)
            values.append(rooted.terms)
        print(f"k={k} exponents<={cfg.max_exponent}: {len(tuples)} Lyndon tuples, "
              f"projection agrees {agree}, rank {exact_rank(values)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--max-exponent", type=int, default=3)
    p.add_argument("--degrees", default="2,3")
    a = p.parse_args()
    run(Config(a.max_exponent, tuple(int(s) for s in a.degrees.split(","))))
