import random
from itertools import product

import pytest

from infoquot import examples
from infoquot.automata import Alphabet, MealyMachine, TwoTapeDfa

BOUNDED = ("fig1b", "fig3_k3", "perfect", "blind")


@pytest.fixture
def fig1b():
    return examples.relation("fig1b")


@pytest.fixture
def fig1a():
    return examples.machine("fig1a")


@pytest.fixture
def fig2():
    return examples.relation("fig2")


def words(letters, length):
    return [tuple(w) for w in product(letters, repeat=length)]


def all_pairs(letters, max_len):
    for n in range(max_len + 1):
        ws = words(letters, n)
        for x in ws:
            for y in ws:
                yield x, y


def random_mealy(rng: random.Random, max_states=4, max_letters=3, max_obs=3) -> MealyMachine:
    n = rng.randint(1, max_states)
    gamma = Alphabet(tuple("abc"[: rng.randint(1, max_letters)]))
    sigma = Alphabet(tuple(range(1, rng.randint(1, max_obs) + 1)))
    states = [f"s{i}" for i in range(n)]
    delta = {(q, c): rng.choice(states) for q in states for c in gamma}
    output = {(q, c): rng.choice(sigma.symbols) for q in states for c in gamma}
    return MealyMachine(gamma, sigma, states, states[0], delta, output)


def relation_from_table(letters, table, initial, accepting) -> TwoTapeDfa:
    base = Alphabet(tuple(letters))
    delta = {(q, c): t for q, row in table.items() for c, t in row.items()}
    return TwoTapeDfa(Alphabet.pairs(base), list(table), initial, delta, accepting)
