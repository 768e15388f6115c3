"""Walk the bundled running example through every pipeline stage and print the intermediate values."""

import argparse
from dataclasses import dataclass

from infoquot import examples, oracle
from infoquot.automata import language_equivalent
from infoquot.formats import serialize
from infoquot.relation import mealy_to_relation, validate
from infoquot.synthesis import synthesize


@dataclass
class Config:
    machine: str = "fig1a"
    relation: str = "fig1b"
    partition_depth: int = 3
    kernel_depth: int = 6


def main(cfg: Config) -> None:
    m = examples.machine(cfg.machine)
    r = examples.relation(cfg.relation)
    print("induced relation equivalent:", language_equivalent(mealy_to_relation(m), r))
    print(validate(r).describe())
    print("information sets:")
    print(oracle.enumerate_partition(r, cfg.partition_depth).format())
    s = synthesize(r)
    print("reflexive:", sorted(s.classification.reflexive), "ambiguous:", sorted(s.classification.ambiguous))
    print("closure states:")
    for i, state in enumerate(s.closure.states):
        print(f"  p{i + 1}: {state.matrix} index {state.index}")
    print("constraints: =", sorted(s.constraints.nontrivial_equalities()), "!=", sorted(s.constraints.disequalities))
    print(serialize(s.machine), end="")
    print(f"kernel equal to depth {cfg.kernel_depth}:", oracle.kernel_equal(s.machine, r, cfg.kernel_depth)[0])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--partition-depth", type=int, default=Config.partition_depth)
    p.add_argument("--kernel-depth", type=int, default=Config.kernel_depth)
    a = p.parse_args()
    main(Config(partition_depth=a.partition_depth, kernel_depth=a.kernel_depth))
