"""Structure of a minimal relation automaton.

Reflexive/ambiguous state classification, interchangeable histories,
lexicographic representatives, and the decision whether the information tree
has bounded branching.  Boundedness is decided as finite ambiguity of the
representation relation projected to its first tape: each accepting run on a
history picks out one lex-least representative of an interchangeability class
inside the history's information set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .automata import (Alphabet, Nfa, TwoTapeDfa, block_map, complement, determinize, minimize, pairwise,
                       project_first, project_second, synchronised_product, trim)


class ConsistencyError(RuntimeError):
    """An internal invariant failed; the input was not a minimal valid relation automaton."""


@dataclass(frozen=True)
class StateClassification:
    reflexive: frozenset
    ambiguous: frozenset


def _diagonal_forward(r: TwoTapeDfa) -> set:
    diagonal = r.alphabet.diagonal()
    seen = {r.initial}
    queue = deque([r.initial])
    while queue:
        q = queue.popleft()
        for c in diagonal:
            t = r.delta[(q, c)]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _diagonal_backward(r: TwoTapeDfa, targets) -> set:
    diagonal = r.alphabet.diagonal()
    preds = {}
    for q in r.states:
        for c in diagonal:
            preds.setdefault(r.delta[(q, c)], set()).add(q)
    seen = set(targets)
    queue = deque(targets)
    while queue:
        t = queue.popleft()
        for q in preds.get(t, ()):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def classify_states(r: TwoTapeDfa) -> StateClassification:
    """Split the states of a minimal valid relation automaton into reflexive and ambiguous ones.

    Reflexive: reachable from the initial state on diagonal letters.
    Ambiguous: a rejecting state is reachable on diagonal letters.
    Raises ConsistencyError when the two sets fail to partition the states.
    """
    reflexive = frozenset(_diagonal_forward(r))
    ambiguous = frozenset(_diagonal_backward(r, r.rejecting))
    overlap = reflexive & ambiguous
    missing = frozenset(r.states) - reflexive - ambiguous
    if overlap or missing:
        raise ConsistencyError(
            f"reflexive/ambiguous states do not partition the automaton (both: {sorted(map(str, overlap))}, "
            f"neither: {sorted(map(str, missing))}); is the input minimal and valid?")
    return StateClassification(reflexive, ambiguous)


def interchangeable(r: TwoTapeDfa, classification: StateClassification, first: Sequence, second: Sequence) -> bool:
    """Whether two same-length histories lead to the same state against every third history."""
    return r.run(pairwise(first, second)) in classification.reflexive


def lex_order_dfa(base: Alphabet, strict: bool = False) -> TwoTapeDfa:
    """Pairs ``(x, y)`` with ``x <= y`` (``x < y`` when strict) in the lexicographic order of `base`."""
    alphabet = Alphabet.pairs(base)
    delta = {}
    for a, b in alphabet:
        i, j = base.index(a), base.index(b)
        delta[("eq", (a, b))] = "eq" if i == j else ("lt" if i < j else "gt")
        delta[("lt", (a, b))] = "lt"
        delta[("gt", (a, b))] = "gt"
    accepting = {"lt"} if strict else {"eq", "lt"}
    return TwoTapeDfa(alphabet, ("eq", "lt", "gt"), "eq", delta, accepting)


def interchangeability_dfa(r: TwoTapeDfa, classification: StateClassification) -> TwoTapeDfa:
    return r.with_accepting(classification.reflexive)


def representatives_dfa(r: TwoTapeDfa, classification: StateClassification,
                        max_states: int | None = None):
    """Histories that are lex-least in their interchangeability class.

    Complement of the second-tape projection of (interchangeable ∧ first tape
    strictly smaller), i.e. of the histories that have a smaller interchangeable
    partner.  Returned minimized.
    """
    smaller = synchronised_product(interchangeability_dfa(r, classification), lex_order_dfa(r.base, strict=True),
                                   reachable_only=True)
    non_representatives = determinize(project_second(smaller), max_states)
    return minimize(complement(non_representatives))


def representation_relation(r: TwoTapeDfa, classification: StateClassification,
                            max_states: int | None = None) -> TwoTapeDfa:
    """Pairs ``(tau, rho)`` with tau ∼ rho and rho the lex-least member of its interchangeability class."""
    reps = representatives_dfa(r, classification, max_states)
    initial = (r.initial, reps.initial)
    order = [initial]
    seen = {initial}
    delta = {}
    i = 0
    while i < len(order):
        q, s = order[i]
        i += 1
        for a, b in r.alphabet:
            t = (r.delta[(q, (a, b))], reps.delta[(s, b)])
            delta[((q, s), (a, b))] = t
            if t not in seen:
                seen.add(t)
                order.append(t)
    accepting = [(q, s) for q, s in order if q in r.accepting and s in reps.accepting]
    return TwoTapeDfa(r.alphabet, order, initial, delta, accepting)


def decision_automaton(r: TwoTapeDfa, classification: StateClassification,
                       max_states: int | None = None) -> Nfa:
    """Trimmed first-tape projection of the representation relation.

    Accepting runs on a history correspond one-to-one to the representatives
    related to it (decorations spell the representative).
    """
    return trim(project_first(representation_relation(r, classification, max_states)))


@dataclass(frozen=True)
class PumpingWitness:
    """Evidence of infinite ambiguity in the decision automaton.

    ``kind == "polynomial"``: states ``p != q`` with runs ``p -v-> p``,
    ``p -v-> q`` and ``q -v-> q``.  ``kind == "exponential"``: ``p == q`` with
    two distinct runs ``p -v-> p``.  `runs` holds the decoration words of the
    runs in that order; `prefix` leads from the initial state to ``p`` and
    `suffix` from ``q`` to acceptance, so ``prefix v^n suffix`` is a family of
    histories with growing numbers of representatives.
    """

    kind: str
    p: object
    q: object
    word: tuple
    runs: tuple
    prefix: tuple
    prefix_decoration: tuple
    suffix: tuple
    suffix_decoration: tuple

    def replays(self, n: Nfa) -> bool:
        """Check every recorded run against the edges of `n`.

        Runs are named by their decoration words, which identifies them exactly
        when no two edges share source, letter and decoration (true for
        decision automata, whose relation is deterministic).
        """
        def follows(start, word, deco):
            current = {start}
            for c, d in zip(word, deco):
                current = {t for q in current for e, t in n.edges(q, c) if e == d}
            return current

        ends = (self.p, self.q, self.q) if self.kind == "polynomial" else (self.p, self.p)
        starts = (self.p, self.p, self.q) if self.kind == "polynomial" else (self.p, self.p)
        if not self.word or len(set(self.runs)) != len(self.runs) and self.kind == "exponential":
            return False
        for start, end, deco in zip(starts, ends, self.runs):
            if end not in follows(start, self.word, deco):
                return False
        (init,) = n.initial
        if self.p not in follows(init, self.prefix, self.prefix_decoration):
            return False
        return bool(follows(self.q, self.suffix, self.suffix_decoration) & n.accepting)


@dataclass(frozen=True)
class BranchingVerdict:
    """Bounded or unbounded branching of the information tree.

    `bound` is the exact maximal branching degree and `max_clique` the largest
    number of interchangeability classes in one information set (largest
    matrix); both come from the synthesis closure and are None when it was
    skipped.  Witness states are states of the decision automaton over the
    minimized relation; `state_map` sends each minimized state to the user
    states it merges.
    """

    bounded: bool
    bound: int | None = None
    max_clique: int | None = None
    witness: PumpingWitness | None = None
    state_map: dict = field(default_factory=dict, compare=False)

    @property
    def kind(self) -> str:
        return "Bounded" if self.bounded else "Unbounded"


def _index_nfa(n: Nfa):
    idx = {q: i for i, q in enumerate(n.states)}
    symbols = n.alphabet.symbols
    adj = [[[(d, idx[t]) for d, t in n.edges(q, c)] for c in symbols] for q in n.states]
    return idx, symbols, adj


def _components(seeds, successors) -> dict:
    """Strongly connected components of the graph reachable from `seeds` (iterative Tarjan)."""
    index, low, comp = {}, {}, {}
    stack, on_stack = [], set()
    counter = 0
    for seed in seeds:
        if seed in index:
            continue
        index[seed] = low[seed] = counter
        counter += 1
        stack.append(seed)
        on_stack.add(seed)
        work = [(seed, iter(successors(seed)))]
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(successors(nxt))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp[member] = node
                    if member == node:
                        break
    return comp


def _targets(adj, x, c) -> set:
    return {y for _, y in adj[x][c]}


def _least_cycle_witness(adj, nletters, sources, is_target, inside, need_split=False):
    """Shortest, then lexicographically least, nonempty joint path from one of `sources` to its target.

    `sources` is a list of ``(origin, states)``; every origin is searched in
    its own copy of the tuple graph, restricted to tuples with ``inside(origin,
    tuple)``.  With `need_split` the first two components must take different
    edges at some step.  Returns ``(origin, letters, decoration words)`` or None.
    """
    parent = {}
    frontier = []
    for origin, states in sources:
        node = (origin, states, not need_split)
        parent[node] = None
        frontier.append(node)
    while frontier:
        nxt, hits = [], []
        for node in frontier:
            origin, states, split = node
            for c in range(nletters):
                combos = [()]
                for x in states:
                    combos = [prefix + (e,) for prefix in combos for e in adj[x][c]]
                    if not combos:
                        break
                for combo in combos:
                    targets = tuple(y for _, y in combo)
                    nsplit = split or (need_split and combo[0] != combo[1])
                    child = (origin, targets, nsplit)
                    if nsplit and is_target(origin, targets):
                        hits.append((node, c, combo))
                        continue
                    if child in parent or not inside(origin, targets):
                        continue
                    parent[child] = (node, c, combo)
                    nxt.append(child)
        if hits:
            found = []
            for node, c, combo in hits:
                steps = [(c, combo)]
                while parent[node] is not None:
                    node, pc, pcombo = parent[node]
                    steps.append((pc, pcombo))
                steps.reverse()
                letters = [pc for pc, _ in steps]
                decos = [tuple(pcombo[i][0] for _, pcombo in steps) for i in range(len(steps[0][1]))]
                found.append((letters, node[0], decos))
            letters, origin, decos = min(found, key=lambda f: (f[0], f[1]))
            return origin, letters, decos
        frontier = nxt
    return None


def _path(adj, start, goal_test):
    """Shortest (letters, decorations) path from `start` to a state satisfying `goal_test`."""
    if goal_test(start):
        return [], []
    parent = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for c, edges in enumerate(adj[x]):
                for d, y in edges:
                    if y in parent:
                        continue
                    parent[y] = (x, c, d)
                    if goal_test(y):
                        letters, decos = [], []
                        node = y
                        while parent[node] is not None:
                            node, pc, pd = parent[node]
                            letters.append(pc)
                            decos.append(pd)
                        return letters[::-1], decos[::-1]
                    nxt.append(y)
        frontier = nxt
    raise ConsistencyError("trimmed automaton has a state without the expected path")


def _polynomial_candidates(adj, nletters, size):
    """Pairs p != q admitting runs p -v-> p, p -v-> q, q -v-> q for a common nonempty v.

    In the triple graph add a reset edge (a, b, b) -> (a, a, b) for every
    a != b.  A reset edge lies on a cycle exactly when its pair has such runs:
    chaining the segments of any cycle through reset edges yields direct runs
    for the pair whose reset edge closes it.
    """
    pairs = _components([(x, y) for x in range(size) for y in range(size)],
                        lambda s: [(x, y) for c in range(nletters)
                                   for x in _targets(adj, s[0], c) for y in _targets(adj, s[1], c)])
    # components 0 and 2 move together on a cycle of the pair graph
    cyclic_pair = set()
    for (x, z), root in pairs.items():
        if any(pairs.get((x2, z2)) == root for c in range(nletters)
               for x2 in _targets(adj, x, c) for z2 in _targets(adj, z, c)):
            cyclic_pair.add((x, z))

    def successors(t):
        x, y, z = t
        out = []
        for c in range(nletters):
            for x2 in _targets(adj, x, c):
                for z2 in _targets(adj, z, c):
                    if (x2, z2) in cyclic_pair and pairs[(x2, z2)] == pairs[(x, z)]:
                        out.extend((x2, y2, z2) for y2 in _targets(adj, y, c))
        if y == z and x != y:
            out.append((x, x, z))
        return out

    seeds = [(p, p, q) for p, q in sorted(cyclic_pair) if p != q]
    comp = _components(seeds, successors)
    members = {}
    for t, root in comp.items():
        members.setdefault(root, set()).add(t)
    chosen = {(p, q): members[comp[(p, p, q)]] for p, q in sorted(cyclic_pair)
              if p != q and (p, q, q) in comp and comp[(p, q, q)] == comp[(p, p, q)]}
    return chosen


def _exponential_candidates(adj, nletters, size):
    """States p with two distinct equally labelled cycles, each with its pair-graph component."""
    def successors(s):
        x, y = s
        return [(x2, y2) for c in range(nletters) for _, x2 in adj[x][c] for _, y2 in adj[y][c]]

    comp = _components([(p, p) for p in range(size)], successors)
    members = {}
    for s, root in comp.items():
        members.setdefault(root, set()).add(s)
    chosen = {}
    for p in range(size):
        group = members[comp[(p, p)]]
        off_diagonal = any(x != y for x, y in group)
        # two different edges into the same state keep the pair diagonal
        parallel = any(sum(1 for _, t in adj[x][c] if t == t2) > 1
                       for x, y in group if x == y for c in range(nletters)
                       for t2 in {t for _, t in adj[x][c] if (t, t) in group})
        if off_diagonal or parallel:
            chosen[p] = group
    return chosen


def find_pumping_witness(n: Nfa) -> PumpingWitness | None:
    """Infinite-ambiguity witness in a trimmed automaton, or None when it is finitely ambiguous.

    Looks for the polynomial pattern first, then the exponential one; among
    candidates the shortest, lexicographically least pumped word wins.
    """
    if not n.states:
        return None
    idx, symbols, adj = _index_nfa(n)
    size = len(n.states)
    nletters = len(symbols)

    kind, found = "polynomial", None
    candidates = _polynomial_candidates(adj, nletters, size)
    if candidates:
        found = _least_cycle_witness(
            adj, nletters, [((p, q), (p, p, q)) for p, q in candidates],
            lambda o, t: t == (o[0], o[1], o[1]), lambda o, t: t in candidates[o])
    else:
        loops = _exponential_candidates(adj, nletters, size)
        if loops:
            kind = "exponential"
            found = _least_cycle_witness(
                adj, nletters, [((p, p), (p, p)) for p in loops],
                lambda o, t: t == o, lambda o, t: t in loops[o[0]], need_split=True)
    if found is None:
        return None

    (p, q), letters, decos = found
    (init,) = n.initial
    pre_letters, pre_decos = _path(adj, idx[init], lambda x: x == p)
    accepting = {idx[s] for s in n.accepting}
    suf_letters, suf_decos = _path(adj, q, lambda x: x in accepting)
    word = tuple(symbols[c] for c in letters)
    return PumpingWitness(
        kind=kind, p=n.states[p], q=n.states[q], word=word, runs=tuple(tuple(d) for d in decos),
        prefix=tuple(symbols[c] for c in pre_letters), prefix_decoration=tuple(pre_decos),
        suffix=tuple(symbols[c] for c in suf_letters), suffix_decoration=tuple(suf_decos))


def decide_bounded_branching(r: TwoTapeDfa, max_states: int | None = None, with_bound: bool = True) -> BranchingVerdict:
    """Decide whether the information tree of a validated relation has bounded branching.

    With `with_bound`, bounded verdicts carry the exact maximal branching
    degree and clique size computed by the synthesis closure.
    """
    m = minimize(r)
    classification = classify_states(m)
    n = decision_automaton(m, classification, max_states)
    witness = find_pumping_witness(n)
    state_map = block_map(r, m)
    if witness is not None:
        return BranchingVerdict(False, witness=witness, state_map=state_map)
    if not with_bound:
        return BranchingVerdict(True, state_map=state_map)
    from .synthesis import build_closure

    closure = build_closure(m, max_states=max_states)
    return BranchingVerdict(True, bound=closure.branching_bound(), max_clique=closure.max_dimension(),
                            state_map=state_map)
