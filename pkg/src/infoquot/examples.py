"""Bundled example automata and the embargo family."""

from __future__ import annotations

from importlib import resources

from .automata import Alphabet, TwoTapeDfa
from .formats import parse

RELATIONS = ("fig1b", "fig2", "fig3_k3", "perfect", "blind")
MUTATIONS = ("fig1b_no_reflexive", "fig1b_no_transitive", "fig1b_no_recall")
MACHINES = ("fig1a",)


def _read(filename: str) -> str:
    return resources.files("infoquot").joinpath("corpus", filename).read_text(encoding="utf-8")


def relation(name: str) -> TwoTapeDfa:
    """A bundled ``.rel`` file by stem, e.g. ``relation("fig1b")``."""
    if name.startswith("fig3_k") and name[6:].isdigit():
        return embargo(int(name[6:]))
    return parse(_read(f"{name}.rel"))


def machine(name: str):
    return parse(_read(f"{name}.mealy"))


def corpus_path(filename: str):
    return resources.files("infoquot").joinpath("corpus", filename)


def embargo(k: int, letters=("a", "b")) -> TwoTapeDfa:
    """Histories are indistinguishable up to length k-1 and told apart (if different) from length k on.

    States: ``e0 .. e{k-1}`` count an equal prefix, ``d1 .. d{k-1}`` count the
    length after a first difference, and ``⊥`` rejects.  2k states in total.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    base = Alphabet(tuple(letters))
    pairs = Alphabet.pairs(base)
    sink = "⊥"
    e = [f"e{i}" for i in range(k)]
    d = [None] + [f"d{i}" for i in range(1, k)]
    delta = {}
    for i in range(k):
        for a, b in pairs:
            if a == b:
                delta[(e[i], (a, b))] = e[min(i + 1, k - 1)]
            else:
                delta[(e[i], (a, b))] = d[i + 1] if i + 1 < k else sink
    for i in range(1, k):
        for c in pairs:
            delta[(d[i], c)] = d[i + 1] if i + 1 < k else sink
    for c in pairs:
        delta[(sink, c)] = sink
    states = e + d[1:] + [sink]
    return TwoTapeDfa(pairs, states, e[0], delta, e + d[1:])
