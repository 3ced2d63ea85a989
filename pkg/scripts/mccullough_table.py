"""Table of the McCullough polynomial for the meridians gamma_n."""

import argparse

from handlebody.acceptance import gamma_word
from handlebody.diagrams import disk_twist_tau1, format_laurent, mccullough_m

if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--max-n", type=int, default=6)
    n_max = p.parse_args().max_n
    for n in range(n_max + 1):
        m = mccullough_m(disk_twist_tau1(3, gamma_word(3, n)))
        print(f"{n:3d}  {format_laurent(m)}")
