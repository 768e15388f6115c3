"""Validation of indistinguishability relations and the Mealy-to-relation direction."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .automata import Alphabet, MealyMachine, TwoTapeDfa, format_word, unzip
from .search import least_word

SINK = "⊥"


def mealy_to_relation(m: MealyMachine) -> TwoTapeDfa:
    """Two-tape automaton accepting exactly the pairs with equal observation histories.

    Both tapes drive a copy of `m`; any step where the two copies emit
    different observations goes to a single rejecting sink.  Only reachable
    state pairs are built; they are named ``(p, p')``.
    """
    alphabet = Alphabet.pairs(m.alphabet)
    start = (m.initial, m.initial)
    order = [start]
    seen = {start}
    delta = {}
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        for a, b in alphabet:
            if m.output[(p, a)] != m.output[(q, b)]:
                delta[((p, q), (a, b))] = SINK
                continue
            t = (m.delta[(p, a)], m.delta[(q, b)])
            delta[((p, q), (a, b))] = t
            if t not in seen:
                seen.add(t)
                order.append(t)
    states = list(order)
    if SINK in delta.values():
        states.append(SINK)
        for c in alphabet:
            delta[(SINK, c)] = SINK
    return TwoTapeDfa(alphabet, states, start, delta, order)


@dataclass(frozen=True)
class Check:
    """Outcome of one validation check; `witness` holds the violating words when `holds` is false."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _letters(r: TwoTapeDfa, tapes: int):
    return list(product(r.base.symbols, repeat=tapes)), [r.base.symbols] * tapes


def check_reflexive(r: TwoTapeDfa) -> Check:
    """Every state reachable on diagonal letters is accepting.  Witness: ``(tau, tau)``."""
    letters = [(a, a) for a in r.base]
    word = least_word(r.initial, lambda q, l: r.delta[(q, l)], letters,
                      lambda q: q not in r.accepting, [r.base.symbols] * 2)
    return Check(True) if word is None else Check(False, unzip(word))


def check_symmetric(r: TwoTapeDfa) -> Check:
    """Witness: least ``(x, y)`` accepted while ``(y, x)`` is rejected."""
    letters, tapes = _letters(r, 2)

    def step(s, l):
        a, b = l
        return r.delta[(s[0], (a, b))], r.delta[(s[1], (b, a))]

    word = least_word((r.initial, r.initial), step, letters,
                      lambda s: s[0] in r.accepting and s[1] not in r.accepting, tapes)
    return Check(True) if word is None else Check(False, unzip(word))


def check_transitive(r: TwoTapeDfa) -> Check:
    """Inclusion of the composition r∘r in r, searched over triples of runs.

    Witness ``(tau, rho, pi)`` with ``(tau, rho)`` and ``(rho, pi)`` accepted but
    ``(tau, pi)`` rejected; least in ``(tau, pi)`` first, then ``rho``.
    """
    letters, tapes = _letters(r, 3)
    F = r.accepting

    def step(s, l):
        a, b, c = l
        return r.delta[(s[0], (a, b))], r.delta[(s[1], (b, c))], r.delta[(s[2], (a, c))]

    start = (r.initial,) * 3
    word = least_word(start, step, letters, lambda s: s[0] in F and s[1] in F and s[2] not in F,
                      tapes, tape_order=(0, 2, 1))
    if word is None:
        return Check(True)
    return Check(False, tuple(tuple(l[k] for l in word) for k in range(3)))


def check_perfect_recall(r: TwoTapeDfa) -> Check:
    """No accepted pair has a rejected prefix pair.

    Witness: the least accepted pair ``(tau c, tau' c')`` whose immediate
    prefix pair ``(tau, tau')`` is rejected.
    """
    letters, tapes = _letters(r, 2)

    def step(s, l):
        q, dirty = s
        return r.delta[(q, l)], dirty or q not in r.accepting

    word = least_word((r.initial, False), step, letters, lambda s: s[1] and s[0] in r.accepting, tapes)
    return Check(True) if word is None else Check(False, unzip(word))


@dataclass(frozen=True)
class ValidationReport:
    reflexive: Check
    symmetric: Check
    transitive: Check
    perfect_recall: Check
    # synchronicity is structural: a two-tape automaton only relates equal lengths
    synchronous: bool = field(default=True)

    @property
    def valid(self) -> bool:
        return all(bool(c) for c in (self.reflexive, self.symmetric, self.transitive, self.perfect_recall))

    def checks(self) -> dict:
        return {"reflexive": self.reflexive, "symmetric": self.symmetric,
                "transitive": self.transitive, "perfect-recall": self.perfect_recall}

    def failures(self) -> list:
        return [name for name, c in self.checks().items() if not c]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "synchronous": self.synchronous,
            "checks": {name: {"holds": c.holds,
                              "witness": None if c.witness is None else [list(w) for w in c.witness]}
                       for name, c in self.checks().items()},
        }

    def describe(self) -> str:
        lines = []
        for name, c in self.checks().items():
            line = f"{name}: {'yes' if c.holds else 'no'}"
            if not c.holds:
                line += "  witness: " + ", ".join(format_word(w) for w in c.witness)
            lines.append(line)
        lines.append("synchronous: yes (two-tape automata are length-preserving)")
        lines.append(f"valid: {'yes' if self.valid else 'no'}")
        return "\n".join(lines)


def validate(r: TwoTapeDfa) -> ValidationReport:
    """Run all four checks on the automaton as given (not minimized)."""
    return ValidationReport(check_reflexive(r), check_symmetric(r), check_transitive(r), check_perfect_recall(r))
