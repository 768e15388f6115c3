"""Seeded round trips: random Mealy machine, induced relation, synthesized machine, induced relation again."""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from infoquot.automata import Alphabet, MealyMachine, language_equivalent
from infoquot.relation import mealy_to_relation
from infoquot.synthesis import synthesize


@dataclass
class Config:
    cases: int = 200
    seed: int = 2024
    max_states: int = 4
    max_letters: int = 3
    max_observations: int = 3


def random_machine(rng: random.Random, cfg: Config) -> MealyMachine:
    n = rng.randint(1, cfg.max_states)
    gamma = Alphabet(tuple("abcdefgh"[: rng.randint(1, cfg.max_letters)]))
    sigma = Alphabet(tuple(range(1, rng.randint(1, cfg.max_observations) + 1)))
    states = [f"s{i}" for i in range(n)]
    delta = {(q, c): rng.choice(states) for q in states for c in gamma}
    output = {(q, c): rng.choice(sigma.symbols) for q in states for c in gamma}
    return MealyMachine(gamma, sigma, states, states[0], delta, output)


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    sizes, bad = Counter(), 0
    t0 = time.perf_counter()
    for case in range(cfg.cases):
        r = mealy_to_relation(random_machine(rng, cfg))
        s = synthesize(r)
        sizes[len(s.machine.states)] += 1
        if not language_equivalent(mealy_to_relation(s.machine), r):
            bad += 1
            print(f"case {case}: round trip changed the relation")
    print(f"{cfg.cases} cases, {bad} failures, {time.perf_counter() - t0:.2f}s")
    print("synthesized state counts:", dict(sorted(sizes.items())))
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--cases", type=int, default=Config.cases)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    raise SystemExit(main(Config(cases=a.cases, seed=a.seed)))
