"""Run the acceptance checks and write a timing table (markdown) to stdout."""

import argparse

from handlebody.acceptance import run_all

if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--only", default="")
    only = {int(s) for s in p.parse_args().only.split(",") if s} or None
    print("| # | check | result | seconds |")
    print("|---|---|---|---|")
    for r in run_all(only=only):
        print(f"| {r.number} | {r.name} | {'pass' if r.passed else 'FAIL'} | {r.seconds:.2f} |")
