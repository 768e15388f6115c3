"""Synthesis cost and output size on the embargo family, where k steps pass before histories are told apart."""

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from infoquot import examples, oracle
from infoquot.synthesis import synthesize


@dataclass
class Config:
    k_max: int = 6
    letters: str = "ab"
    verify: bool = True


def main(cfg: Config) -> None:
    out = csv.writer(sys.stdout)
    out.writerow(["k", "relation_states", "closure_states", "bound", "max_clique", "symbols", "seconds", "kernel"])
    for k in range(1, cfg.k_max + 1):
        r = examples.embargo(k, tuple(cfg.letters))
        t0 = time.perf_counter()
        s = synthesize(r)
        elapsed = time.perf_counter() - t0
        kernel = ""
        if cfg.verify and k + 3 <= 9:
            kernel = oracle.kernel_equal(s.machine, r, k + 3, max_depth=k + 3)[0]
        out.writerow([k, len(r.states), len(s.closure), s.verdict.bound, s.verdict.max_clique,
                      len(s.machine.outputs), f"{elapsed:.3f}", kernel])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=Config.k_max)
    p.add_argument("--letters", default=Config.letters)
    p.add_argument("--no-verify", action="store_true")
    a = p.parse_args()
    main(Config(k_max=a.k_max, letters=a.letters, verify=not a.no_verify))
