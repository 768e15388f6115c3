"""Finite automata over declared alphabets.

Acceptors (`Dfa`, `TwoTapeDfa`, `Nfa`) and transducers (`MealyMachine`) are
immutable values.  Two-tape automata read pair symbols ``(a, b)`` and so
recognise synchronous (length-preserving) relations.  Words are tuples of
symbols; a plain string works as input whenever every symbol is one character.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field, replace
from itertools import product
from types import MappingProxyType
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .search import least_word

State = Hashable
Symbol = Hashable
Word = tuple

DEFAULT_MAX_STATES = 1_000_000


class AutomatonError(ValueError):
    """Malformed automaton or ill-typed input."""


class InputError(AutomatonError):
    """A word or argument does not fit the automaton (unknown symbol, length mismatch)."""


class AlphabetMismatchError(AutomatonError):
    pass


class ResourceLimitError(RuntimeError):
    """A construction would exceed its state budget."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded the state budget of {cap} states (--max-states)")
        self.what = what
        self.cap = cap


def max_states_budget(value: int | None = None) -> int:
    if value is not None:
        return value
    env = os.environ.get("INFOQUOT_MAX_STATES")
    return int(env) if env else DEFAULT_MAX_STATES


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbols; declaration order is the letter order used for lexicographic comparisons."""

    symbols: tuple
    base: Alphabet | None = None
    _pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise AutomatonError("alphabet must not be empty")
        if len(set(symbols)) != len(symbols):
            raise AutomatonError(f"duplicate symbols in alphabet {symbols!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_pos", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def pairs(cls, base: Alphabet) -> Alphabet:
        """The paired alphabet base x base, ordered by first then second component."""
        return cls(tuple(product(base.symbols, repeat=2)), base=base)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._pos

    def index(self, symbol) -> int:
        try:
            return self._pos[symbol]
        except (KeyError, TypeError):
            raise InputError(f"symbol {symbol!r} is not in the alphabet {self.symbols!r}") from None

    def word(self, word: Iterable) -> Word:
        """Validate `word` against the alphabet and return it as a tuple."""
        word = tuple(word)
        for symbol in word:
            self.index(symbol)
        return word

    def key(self, word: Sequence) -> tuple:
        """Sort key implementing the lexicographic order induced by the declaration order."""
        return tuple(self._pos[s] for s in word)

    def diagonal(self) -> tuple:
        if self.base is None:
            raise InputError("diagonal symbols only exist in a paired alphabet")
        return tuple((a, a) for a in self.base)


def pairwise(first: Sequence, second: Sequence) -> Word:
    """Zip two equal-length words into a word of pair symbols."""
    first, second = tuple(first), tuple(second)
    if len(first) != len(second):
        raise InputError(f"words of different length: {len(first)} != {len(second)}")
    return tuple(zip(first, second))


def unzip(word: Sequence) -> tuple[Word, Word]:
    """Split a word of pair symbols into its two tapes."""
    return tuple(c[0] for c in word), tuple(c[1] for c in word)


def _freeze(mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete deterministic automaton (Q, alphabet, initial, delta, F)."""

    alphabet: Alphabet
    states: tuple
    initial: State
    delta: Mapping
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", _freeze(self.delta))
        known = set(self.states)
        if len(known) != len(self.states):
            raise AutomatonError("duplicate state ids")
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} is not a state")
        if not self.accepting <= known:
            raise AutomatonError(f"accepting states {set(self.accepting - known)!r} are not states")
        for q in self.states:
            for c in self.alphabet:
                try:
                    target = self.delta[(q, c)]
                except KeyError:
                    raise AutomatonError(f"missing transition from {q!r} on {c!r}") from None
                if target not in known:
                    raise AutomatonError(f"transition {q!r} --{c!r}--> {target!r} leaves the state set")
        if len(self.delta) != len(self.states) * len(self.alphabet):
            raise AutomatonError("transition table has entries outside states x alphabet")

    @property
    def size(self) -> int:
        return len(self.states) * len(self.alphabet)

    @property
    def rejecting(self) -> frozenset:
        return frozenset(self.states) - self.accepting

    def step(self, state: State, symbol: Symbol) -> State:
        return self.delta[(state, symbol)]

    def run(self, word: Iterable, start: State | None = None) -> State:
        """Extended transition function from `start` (default: the initial state)."""
        q = self.initial if start is None else start
        for c in self.alphabet.word(word):
            q = self.delta[(q, c)]
        return q

    def accepts(self, word: Iterable, start: State | None = None) -> bool:
        return self.run(word, start) in self.accepting

    def with_accepting(self, accepting: Iterable[State]) -> Dfa:
        return replace(self, accepting=frozenset(accepting))

    def reachable(self) -> Dfa:
        """Restriction to states reachable from the initial state, in breadth-first order."""
        order = _bfs_order(self.initial, lambda q: (self.delta[(q, c)] for c in self.alphabet))
        keep = set(order)
        delta = {(q, c): self.delta[(q, c)] for q in order for c in self.alphabet}
        return replace(self, states=tuple(order), delta=delta, accepting=self.accepting & keep)

    def __repr__(self):
        return (f"{type(self).__name__}(states={len(self.states)}, alphabet={self.alphabet.symbols!r}, "
                f"initial={self.initial!r}, accepting={len(self.accepting)})")


class TwoTapeDfa(Dfa):
    """Dfa over a paired alphabet; recognises a synchronous relation on the base alphabet."""

    def __post_init__(self):
        if self.alphabet.base is None:
            raise AutomatonError("a two-tape automaton needs a paired alphabet (use Alphabet.pairs)")
        super().__post_init__()

    @property
    def base(self) -> Alphabet:
        return self.alphabet.base

    def run_pair(self, first: Sequence, second: Sequence, start: State | None = None) -> State:
        return self.run(pairwise(first, second), start)

    def accepts_pair(self, first: Sequence, second: Sequence) -> bool:
        return self.run_pair(first, second) in self.accepting


@dataclass(frozen=True, eq=False)
class Nfa:
    """Nondeterministic automaton whose transitions may carry a decoration symbol.

    ``delta[(q, c)]`` is a tuple of ``(decoration, target)`` edges; the decoration
    is ``None`` for plain transitions.  Missing keys mean no transition.
    """

    alphabet: Alphabet
    states: tuple
    initial: frozenset
    delta: Mapping
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "delta", _freeze({k: tuple(v) for k, v in self.delta.items() if v}))
        known = set(self.states)
        if not self.initial <= known or not self.accepting <= known:
            raise AutomatonError("initial/accepting states must be states")
        for (q, c), edges in self.delta.items():
            if q not in known or c not in self.alphabet:
                raise AutomatonError(f"transition key {(q, c)!r} outside states x alphabet")
            for _, target in edges:
                if target not in known:
                    raise AutomatonError(f"transition target {target!r} is not a state")

    def edges(self, state: State, symbol: Symbol) -> tuple:
        return self.delta.get((state, symbol), ())

    def targets(self, state: State, symbol: Symbol) -> frozenset:
        return frozenset(t for _, t in self.edges(state, symbol))

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) <= 1 and all(len({t for _, t in e}) <= 1 for e in self.delta.values())

    def accepts(self, word: Iterable) -> bool:
        current = set(self.initial)
        for c in self.alphabet.word(word):
            current = {t for q in current for _, t in self.edges(q, c)}
        return bool(current & self.accepting)

    def accepting_runs(self, word: Iterable) -> list:
        """All accepting runs on `word`, each as (state sequence, decoration word)."""
        runs = [((q,), ()) for q in sorted(self.initial, key=self.states.index)]
        for c in self.alphabet.word(word):
            runs = [(path + (t,), deco + (d,)) for path, deco in runs for d, t in self.edges(path[-1], c)]
        return [r for r in runs if r[0][-1] in self.accepting]


@dataclass(frozen=True, eq=False)
class MealyMachine:
    """Deterministic transducer; its extended output function is an observation function."""

    alphabet: Alphabet
    outputs: Alphabet
    states: tuple
    initial: State
    delta: Mapping
    output: Mapping

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "delta", _freeze(self.delta))
        object.__setattr__(self, "output", _freeze(self.output))
        known = set(self.states)
        if len(known) != len(self.states):
            raise AutomatonError("duplicate state ids")
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} is not a state")
        for q in self.states:
            for c in self.alphabet:
                if (q, c) not in self.delta or (q, c) not in self.output:
                    raise AutomatonError(f"missing transition or output from {q!r} on {c!r}")
                if self.delta[(q, c)] not in known:
                    raise AutomatonError(f"transition target {self.delta[(q, c)]!r} is not a state")
                if self.output[(q, c)] not in self.outputs:
                    raise AutomatonError(f"output {self.output[(q, c)]!r} is not an observation symbol")
        if set(self.delta) != set(self.output) or len(self.delta) != len(self.states) * len(self.alphabet):
            raise AutomatonError("transition and output tables must cover exactly states x alphabet")

    def step(self, state: State, symbol: Symbol) -> State:
        return self.delta[(state, symbol)]

    def run(self, word: Iterable, start: State | None = None) -> State:
        q = self.initial if start is None else start
        for c in self.alphabet.word(word):
            q = self.delta[(q, c)]
        return q

    def observations(self, word: Iterable) -> Word:
        """Observation history of any history; the empty history observes the empty sequence."""
        q = self.initial
        seen = []
        for c in self.alphabet.word(word):
            seen.append(self.output[(q, c)])
            q = self.delta[(q, c)]
        return tuple(seen)

    def observation_history(self, word: Iterable) -> Word:
        word = tuple(word)
        if not word:
            raise InputError("observation history is defined on nonempty histories; use observations() for the empty one")
        return self.observations(word)

    def __repr__(self):
        return (f"MealyMachine(states={len(self.states)}, alphabet={self.alphabet.symbols!r}, "
                f"outputs={self.outputs.symbols!r})")


def _bfs_order(start, successors: Callable[[Any], Iterable]) -> list:
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for t in successors(q):
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def _acceptor_class(alphabet: Alphabet):
    return TwoTapeDfa if alphabet.base is not None else Dfa


def _accepting_of(automaton) -> frozenset:
    return getattr(automaton, "accepting", frozenset())


def synchronised_product(a1, a2, accept: str | Callable = "both", reachable_only: bool = False) -> Dfa:
    """Synchronised product of two semi-automata over the same alphabet.

    `accept` selects the accepting pairs: ``"both"`` (intersection),
    ``"either"`` (union), ``"first-only"`` (difference) or a predicate
    ``f(q1, q2)``.  Mealy machines enter as their underlying semi-automata.
    """
    if a1.alphabet.symbols != a2.alphabet.symbols:
        raise AlphabetMismatchError("synchronised product needs a common alphabet")
    f1, f2 = _accepting_of(a1), _accepting_of(a2)
    if callable(accept):
        is_final = accept
    else:
        is_final = {
            "both": lambda p, q: p in f1 and q in f2,
            "either": lambda p, q: p in f1 or q in f2,
            "first-only": lambda p, q: p in f1 and q not in f2,
        }[accept]
    symbols = a1.alphabet.symbols
    initial = (a1.initial, a2.initial)
    if reachable_only:
        states = _bfs_order(initial, lambda s: ((a1.delta[(s[0], c)], a2.delta[(s[1], c)]) for c in symbols))
    else:
        states = list(product(a1.states, a2.states))
    delta = {((p, q), c): (a1.delta[(p, c)], a2.delta[(q, c)]) for p, q in states for c in symbols}
    accepting = [s for s in states if is_final(*s)]
    return _acceptor_class(a1.alphabet)(a1.alphabet, states, initial, delta, accepting)


def parallel_product(a1, a2, reachable_only: bool = False) -> Dfa:
    """Run two semi-automata side by side on separate tapes, one letter each per step."""
    if a1.alphabet.symbols == a2.alphabet.symbols:
        alphabet = Alphabet.pairs(a1.alphabet)
    else:
        alphabet = Alphabet(tuple(product(a1.alphabet.symbols, a2.alphabet.symbols)))
    initial = (a1.initial, a2.initial)

    def succ(s):
        return ((a1.delta[(s[0], c1)], a2.delta[(s[1], c2)]) for c1, c2 in alphabet)

    states = _bfs_order(initial, succ) if reachable_only else list(product(a1.states, a2.states))
    delta = {((p, q), (c1, c2)): (a1.delta[(p, c1)], a2.delta[(q, c2)]) for p, q in states for c1, c2 in alphabet}
    f1, f2 = _accepting_of(a1), _accepting_of(a2)
    accepting = [(p, q) for p, q in states if p in f1 and q in f2]
    return _acceptor_class(alphabet)(alphabet, states, initial, delta, accepting)


def complement(d: Dfa) -> Dfa:
    return d.with_accepting(d.rejecting)


def transpose(r: TwoTapeDfa) -> TwoTapeDfa:
    """Swap the two tapes."""
    delta = {(q, (a, b)): r.delta[(q, (b, a))] for q in r.states for a, b in r.alphabet}
    return replace(r, delta=delta)


def as_nfa(d: Dfa) -> Nfa:
    delta = {(q, c): ((None, d.delta[(q, c)]),) for q in d.states for c in d.alphabet}
    return Nfa(d.alphabet, d.states, {d.initial}, delta, d.accepting)


def _project(r: TwoTapeDfa, keep: int) -> Nfa:
    other = 1 - keep
    delta = {}
    for q in r.states:
        for pair in r.alphabet:
            delta.setdefault((q, pair[keep]), []).append((pair[other], r.delta[(q, pair)]))
    return Nfa(r.base, r.states, {r.initial}, delta, r.accepting)


def project_first(r: TwoTapeDfa) -> Nfa:
    """Keep the first tape as input; the second-tape letter becomes the edge decoration."""
    return _project(r, 0)


def project_second(r: TwoTapeDfa) -> Nfa:
    """Keep the second tape as input; the first-tape letter becomes the edge decoration."""
    return _project(r, 1)


def fold_decorations(n: Nfa) -> Nfa:
    """Turn decorated edges ``q --c/d--> t`` into plain edges on the pair symbol ``(c, d)``."""
    alphabet = Alphabet.pairs(n.alphabet)
    delta = {}
    for (q, c), edges in n.delta.items():
        for d, t in edges:
            delta.setdefault((q, (c, d)), []).append((None, t))
    return Nfa(alphabet, n.states, n.initial, delta, n.accepting)


def trim(a) -> Nfa:
    """Restriction to useful states: reachable from an initial state and co-reachable to an accepting one."""
    n = as_nfa(a) if isinstance(a, Dfa) else a
    forward = set()
    queue = deque(n.initial)
    forward.update(n.initial)
    while queue:
        q = queue.popleft()
        for c in n.alphabet:
            for _, t in n.edges(q, c):
                if t not in forward:
                    forward.add(t)
                    queue.append(t)
    backward_edges = {}
    for (q, c), edges in n.delta.items():
        for _, t in edges:
            backward_edges.setdefault(t, set()).add(q)
    useful_back = set(n.accepting)
    queue = deque(n.accepting)
    while queue:
        t = queue.popleft()
        for q in backward_edges.get(t, ()):
            if q not in useful_back:
                useful_back.add(q)
                queue.append(q)
    useful = forward & useful_back
    states = tuple(q for q in n.states if q in useful)
    delta = {}
    for (q, c), edges in n.delta.items():
        if q in useful:
            kept = tuple(e for e in edges if e[1] in useful)
            if kept:
                delta[(q, c)] = kept
    return Nfa(n.alphabet, states, n.initial & useful, delta, n.accepting & useful)


def complete_to_sink(a, sink: State | None = None) -> Dfa:
    """Complete a partial deterministic automaton with one fresh non-accepting sink.

    Complete inputs are returned unchanged (as a `Dfa`).
    """
    if isinstance(a, Dfa):
        return a
    if not a.is_deterministic or len(a.initial) != 1:
        raise AutomatonError("complete_to_sink needs a deterministic automaton with one initial state")
    missing = [(q, c) for q in a.states for c in a.alphabet if not a.edges(q, c)]
    delta = {(q, c): a.edges(q, c)[0][1] for q in a.states for c in a.alphabet if a.edges(q, c)}
    states = list(a.states)
    if missing:
        if sink is None:
            sink = "⊥"
            while sink in states:
                sink += "'"
        elif sink in states:
            raise AutomatonError(f"sink name {sink!r} is already a state")
        states.append(sink)
        for key in missing:
            delta[key] = sink
        for c in a.alphabet:
            delta[(sink, c)] = sink
    (initial,) = a.initial
    return _acceptor_class(a.alphabet)(a.alphabet, states, initial, delta, a.accepting)


def determinize(n: Nfa, max_states: int | None = None) -> Dfa:
    """Subset construction (decorations are ignored); states are numbered in breadth-first order."""
    cap = max_states_budget(max_states)
    start = frozenset(n.initial)
    index = {start: 0}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for c in n.alphabet:
            target = frozenset(t for q in subset for _, t in n.edges(q, c))
            if target not in index:
                if len(index) >= cap:
                    raise ResourceLimitError("determinization", cap)
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            delta[(index[subset], c)] = index[target]
    accepting = [i for i, s in enumerate(order) if s & n.accepting]
    return _acceptor_class(n.alphabet)(n.alphabet, range(len(order)), 0, delta, accepting)


def compose(r1: TwoTapeDfa, r2: TwoTapeDfa, max_states: int | None = None) -> TwoTapeDfa:
    """Relational composition {(x, z) : (x, y) in r1 and (y, z) in r2 for some y}."""
    if r1.base.symbols != r2.base.symbols:
        raise AlphabetMismatchError("composition needs relations over the same base alphabet")
    base = r1.base
    states = list(product(r1.states, r2.states))
    delta = {}
    for p, q in states:
        for a, c in r1.alphabet:
            delta[((p, q), (a, c))] = [(None, (r1.delta[(p, (a, b))], r2.delta[(q, (b, c))])) for b in base]
    accepting = [(p, q) for p, q in states if p in r1.accepting and q in r2.accepting]
    nfa = Nfa(r1.alphabet, states, {(r1.initial, r2.initial)}, delta, accepting)
    return determinize(nfa, max_states)


def relabel(d: Dfa) -> Dfa:
    """Rename states to 0..n-1 in breadth-first discovery order (reachable part only)."""
    d = d.reachable()
    name = {q: i for i, q in enumerate(d.states)}
    delta = {(name[q], c): name[t] for (q, c), t in d.delta.items()}
    return replace(d, states=range(len(name)), initial=0, delta=delta, accepting={name[q] for q in d.accepting})


def minimize(d: Dfa) -> Dfa:
    """Minimal complete automaton for the same language, by Hopcroft partition refinement.

    States appear in breadth-first order of the quotient; each keeps the name of
    its earliest-discovered member, so already-minimal inputs come back with
    their own state names.
    """
    d = d.reachable()
    states = d.states
    n = len(states)
    pos = {q: i for i, q in enumerate(states)}
    symbols = d.alphabet.symbols
    inverse = {c: [[] for _ in range(n)] for c in symbols}
    for q in states:
        for c in symbols:
            inverse[c][pos[d.delta[(q, c)]]].append(pos[q])

    final = {pos[q] for q in d.accepting}
    blocks = [set(b) for b in (final, set(range(n)) - final) if b]
    block_of = [0] * n
    for b, members in enumerate(blocks):
        for i in members:
            block_of[i] = b
    pending = deque()
    in_pending = set()
    if len(blocks) == 2:
        smaller = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        for c in symbols:
            pending.append((smaller, c))
            in_pending.add((smaller, c))
    while pending:
        splitter, c = pending.popleft()
        in_pending.discard((splitter, c))
        hit = {}
        for t in list(blocks[splitter]):
            for p in inverse[c][t]:
                hit.setdefault(block_of[p], set()).add(p)
        for b, part in hit.items():
            if len(part) == len(blocks[b]):
                continue
            blocks[b] -= part
            new = len(blocks)
            blocks.append(part)
            for p in part:
                block_of[p] = new
            for e in symbols:
                if (b, e) in in_pending:
                    pending.append((new, e))
                    in_pending.add((new, e))
                else:
                    pick = b if len(blocks[b]) <= len(part) else new
                    pending.append((pick, e))
                    in_pending.add((pick, e))

    name = {b: states[min(members)] for b, members in enumerate(blocks)}
    start = block_of[pos[d.initial]]
    order = _bfs_order(start, lambda b: (block_of[pos[d.delta[(states[min(blocks[b])], c)]]] for c in symbols))
    delta = {}
    for b in order:
        q = states[min(blocks[b])]
        for c in symbols:
            delta[(name[b], c)] = name[block_of[pos[d.delta[(q, c)]]]]
    accepting = [name[b] for b in order if min(blocks[b]) in final]
    return replace(d, states=[name[b] for b in order], initial=name[start], delta=delta, accepting=accepting)


def block_map(d: Dfa, m: Dfa) -> dict:
    """For `m = minimize(d)`: each state of `m` mapped to the tuple of states of `d` it merges."""
    members = {q: [] for q in m.states}
    reach = d.reachable()
    # a state of d lands in the block reached by the same access word
    access = {reach.initial: ()}
    for q in reach.states:
        for c in reach.alphabet:
            t = reach.delta[(q, c)]
            if t not in access:
                access[t] = access[q] + (c,)
    for q in reach.states:
        members[m.run(access[q])].append(q)
    return {k: tuple(v) for k, v in members.items()}


def tapes_of(alphabet: Alphabet) -> tuple[list, list]:
    """Search letters and per-tape letter orders for `least_word` over this alphabet."""
    if alphabet.base is not None:
        return list(alphabet.symbols), [alphabet.base.symbols, alphabet.base.symbols]
    return [(c,) for c in alphabet], [alphabet.symbols]


def shortest_accepted(d: Dfa, start: State | None = None) -> Word | None:
    """Least accepted word: shortest first, then lexicographic (tape by tape for two-tape automata)."""
    letters, tapes = tapes_of(d.alphabet)
    unwrap = d.alphabet.base is None
    step = (lambda q, l: d.delta[(q, l[0])]) if unwrap else (lambda q, l: d.delta[(q, l)])
    found = least_word(d.initial if start is None else start, step, letters, lambda q: q in d.accepting, tapes)
    if found is None:
        return None
    return tuple(l[0] for l in found) if unwrap else found


def equivalence_witness(d1: Dfa, d2: Dfa) -> Word | None:
    """Least word accepted by exactly one of the two automata, or None when equivalent."""
    if d1.alphabet.symbols != d2.alphabet.symbols:
        raise AlphabetMismatchError("equivalence needs a common alphabet")
    return shortest_accepted(synchronised_product(d1, d2, accept=lambda p, q: (p in d1.accepting) != (q in d2.accepting),
                                                  reachable_only=True))


def language_equivalent(d1: Dfa, d2: Dfa) -> bool:
    return equivalence_witness(d1, d2) is None


def format_word(word: Sequence) -> str:
    """Human-readable rendering of a word; ``ε`` for the empty word."""
    word = tuple(word)
    if not word:
        return "ε"
    if all(isinstance(s, str) and len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(str(s) for s in word)
