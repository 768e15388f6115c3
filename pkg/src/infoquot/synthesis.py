"""Synthesis of an observation Mealy machine from a bounded-branching relation.

A history is tracked by a matrix-index state: the matrix lists the relation
states ``delta(q0, (tau_i, tau_j))`` between the lex-least members of the
interchangeability classes inside the history's information set, and the
index says which class the history belongs to.  Closing the initial state
under `successor` gives the Mealy state space; outputs come from a set of
equality/disequality constraints solved with union-find plus greedy colouring.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .automata import (Alphabet, MealyMachine, ResourceLimitError, TwoTapeDfa, max_states_budget, minimize)
from .relation import ValidationReport, validate
from .structure import (BranchingVerdict, PumpingWitness, StateClassification, classify_states,
                        decide_bounded_branching)


class InvalidRelationError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__("not an indistinguishability relation with perfect recall: failed "
                         + ", ".join(report.failures()))
        self.report = report


class UnrepresentableError(ValueError):
    """The information tree has unbounded branching, so no finite observation alphabet suffices."""

    def __init__(self, verdict: BranchingVerdict):
        w = verdict.witness
        super().__init__(f"unbounded branching; pumping word {''.join(map(str, w.word))!r} "
                         f"({w.kind} ambiguity between states {w.p!r} and {w.q!r})")
        self.verdict = verdict


class InfeasibleConstraintsError(RuntimeError):
    def __init__(self, pair, chain):
        super().__init__(f"disequality {pair[0]} != {pair[1]} contradicts the equality chain "
                         + " = ".join(map(str, chain)))
        self.pair = pair
        self.chain = chain


@dataclass(frozen=True)
class StateMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("state matrix must be square and nonempty")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def __str__(self):
        return "[" + "; ".join(" ".join(map(str, row)) for row in self.entries) + "]"


@dataclass(frozen=True)
class MatrixIndexState:
    matrix: StateMatrix
    index: int  # 1-based column of the tracked history's class

    def __post_init__(self):
        if not 1 <= self.index <= self.matrix.dim:
            raise ValueError(f"index {self.index} outside 1..{self.matrix.dim}")

    def __str__(self):
        return f"<{self.matrix}, {self.index}>"


def transform(m: StateMatrix, r: TwoTapeDfa) -> StateMatrix:
    """Replace every entry q by the |Γ|×|Γ| block of its one-step successors delta(q, (a, b))."""
    letters = r.base.symbols
    rows = []
    for i in range(m.dim):
        for a in letters:
            rows.append(tuple(r.delta[(m[i, j], (a, b))] for j in range(m.dim) for b in letters))
    return StateMatrix(rows)


def successor(m: StateMatrix, index: int, move, r: TwoTapeDfa) -> MatrixIndexState:
    """Matrix and index after appending `move` to a history with matrix `m` and (1-based) `index`."""
    width = len(r.base)
    grid = [list(row) for row in transform(m, r).entries]
    j = (index - 1) * width + r.base.index(move)
    rejecting = r.rejecting

    # (ii) drop the classes that are distinguishable from the tracked one
    keep = [k for k in range(len(grid)) if grid[k][j] not in rejecting]
    j = keep.index(j)
    grid = [[grid[k][l] for l in keep] for k in keep]

    # (iii) merge identical columns, keeping the leftmost; repeat to a fixpoint
    while True:
        first_seen = {}
        duplicate = None
        for col in range(len(grid)):
            column = tuple(row[col] for row in grid)
            if column in first_seen:
                duplicate = (first_seen[column], col)
                break
            first_seen[column] = col
        if duplicate is None:
            break
        kept, dropped = duplicate
        if j == dropped:
            j = kept
        elif j > dropped:
            j -= 1
        grid = [[v for l, v in enumerate(row) if l != dropped] for k, row in enumerate(grid) if k != dropped]
    return MatrixIndexState(StateMatrix(grid), j + 1)


def initial_state(r: TwoTapeDfa) -> MatrixIndexState:
    return MatrixIndexState(StateMatrix([[r.initial]]), 1)


@dataclass(frozen=True, eq=False)
class ClosureAutomaton:
    """Matrix-index states reachable from the initial one, numbered in breadth-first order."""

    relation: TwoTapeDfa
    states: tuple
    transitions: dict  # (state number, move) -> state number
    initial: int = 0

    def __len__(self):
        return len(self.states)

    def step(self, i: int, move) -> int:
        return self.transitions[(i, move)]

    def run(self, word) -> int:
        i = self.initial
        for c in word:
            i = self.transitions[(i, c)]
        return i

    def max_dimension(self) -> int:
        return max(s.matrix.dim for s in self.states)

    def branching_bound(self) -> int:
        """Maximal branching degree of the information tree.

        An information set with matrix M has children indexed by (class i, move a);
        two of them coincide iff delta(M[i][j], (a, b)) accepts.
        """
        r = self.relation
        letters = r.base.symbols
        best = 0
        for m in {s.matrix for s in self.states}:
            nodes = [(i, a) for i in range(m.dim) for a in letters]
            reps = []
            for i, a in nodes:
                if not any(r.delta[(m[i, j], (a, b))] in r.accepting for j, b in reps):
                    reps.append((i, a))
            best = max(best, len(reps))
        return best


def build_closure(r: TwoTapeDfa, max_states: int | None = None) -> ClosureAutomaton:
    """Close the initial matrix-index state under all successors.

    `r` must be minimal and validated; call it only on bounded relations, the
    state budget is the only guard against divergence.
    """
    cap = max_states_budget(max_states)
    start = initial_state(r)
    index = {start: 0}
    order = [start]
    transitions = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for c in r.base:
            t = successor(s.matrix, s.index, c, r)
            if t not in index:
                if len(order) >= cap:
                    raise ResourceLimitError("matrix-index closure", cap)
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            transitions[(index[s], c)] = index[t]
    return ClosureAutomaton(r, tuple(order), transitions)


@dataclass(frozen=True)
class ConstraintSet:
    """Equalities and disequalities over output variables ``(closure state number, move)``.

    Pairs are stored ordered by variable position.  `witnesses` maps
    ``("=" | "!=", u, v)`` to a pair of histories exhibiting the constraint.
    """

    variables: tuple
    equalities: frozenset
    disequalities: frozenset
    witnesses: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        clash = self.equalities & self.disequalities
        if clash:
            raise InfeasibleConstraintsError(next(iter(clash)), list(next(iter(clash))))
        known = set(self.variables)
        for u, v in self.equalities | self.disequalities:
            if u not in known or v not in known:
                raise ValueError(f"constraint mentions unknown variable {(u, v)!r}")

    def nontrivial_equalities(self) -> frozenset:
        return frozenset(e for e in self.equalities if e[0] != e[1])


def generate_constraints(closure: ClosureAutomaton, r: TwoTapeDfa | None = None) -> ConstraintSet:
    """Constraints read off the reachable part of (closure ∥ closure) × r, skipping the rejecting states."""
    r = closure.relation if r is None else r
    letters = r.base.symbols
    variables = tuple((p, a) for p in range(len(closure)) for a in letters)
    position = {v: i for i, v in enumerate(variables)}

    def ordered(u, v):
        return (u, v) if position[u] <= position[v] else (v, u)

    start = ((closure.initial, closure.initial), r.initial)
    histories = {start: ((), ())}
    queue = deque([start])
    equalities, disequalities, witnesses = set(), set(), {}
    while queue:
        node = queue.popleft()
        (p1, p2), q = node
        tau1, tau2 = histories[node]
        for a in letters:
            for b in letters:
                target = r.delta[(q, (a, b))]
                pair = ordered((p1, a), (p2, b))
                if target in r.accepting:
                    kind, bucket = "=", equalities
                else:
                    kind, bucket = "!=", disequalities
                if pair not in bucket:
                    bucket.add(pair)
                    witnesses[(kind,) + pair] = (tau1 + (a,), tau2 + (b,))
                if target in r.accepting:
                    child = ((closure.step(p1, a), closure.step(p2, b)), target)
                    if child not in histories:
                        histories[child] = (tau1 + (a,), tau2 + (b,))
                        queue.append(child)
    return ConstraintSet(variables, frozenset(equalities), frozenset(disequalities), witnesses)


class DisjointSet:
    def __init__(self, items: Sequence = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def _equality_chain(phi: ConstraintSet, u, v) -> list:
    graph = {}
    for a, b in phi.equalities:
        graph.setdefault(a, []).append(b)
        graph.setdefault(b, []).append(a)
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in graph.get(x, ()):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    chain = [v]
    while parent.get(chain[-1]) is not None:
        chain.append(parent[chain[-1]])
    return chain[::-1]


def solve_constraints(phi: ConstraintSet) -> dict:
    """Assign a positive integer to every variable satisfying all constraints.

    Equalities are merged by union-find; the classes, taken in order of their
    first variable, get the smallest symbol not used by a class they must
    differ from.
    """
    classes = DisjointSet(phi.variables)
    for u, v in phi.equalities:
        classes.union(u, v)
    conflicts = {}
    for u, v in phi.disequalities:
        cu, cv = classes.find(u), classes.find(v)
        if cu == cv:
            raise InfeasibleConstraintsError((u, v), _equality_chain(phi, u, v))
        conflicts.setdefault(cu, set()).add(cv)
        conflicts.setdefault(cv, set()).add(cu)
    colour = {}
    for var in phi.variables:
        root = classes.find(var)
        if root in colour:
            continue
        taken = {colour[o] for o in conflicts.get(root, ()) if o in colour}
        c = 1
        while c in taken:
            c += 1
        colour[root] = c
    return {var: colour[classes.find(var)] for var in phi.variables}


@dataclass(frozen=True, eq=False)
class Synthesis:
    """Every intermediate product of `synthesize`."""

    machine: MealyMachine
    minimized: TwoTapeDfa
    classification: StateClassification
    verdict: BranchingVerdict
    closure: ClosureAutomaton
    constraints: ConstraintSet
    assignment: dict


def machine_from_assignment(closure: ClosureAutomaton, assignment: dict) -> MealyMachine:
    letters = closure.relation.base
    names = [f"p{i + 1}" for i in range(len(closure))]
    delta = {(names[i], a): names[closure.step(i, a)] for i in range(len(closure)) for a in letters}
    output = {(names[i], a): assignment[(i, a)] for i in range(len(closure)) for a in letters}
    symbols = Alphabet(tuple(sorted(set(output.values()))))
    return MealyMachine(letters, symbols, names, names[0], delta, output)


def synthesize(r: TwoTapeDfa, max_states: int | None = None) -> Synthesis:
    """Full relation-to-Mealy pipeline.

    Raises InvalidRelationError when `r` fails validation and
    UnrepresentableError (carrying the pumping witness) on unbounded branching.
    """
    report = validate(r)
    if not report.valid:
        raise InvalidRelationError(report)
    m = minimize(r)
    classification = classify_states(m)
    verdict = decide_bounded_branching(m, max_states=max_states, with_bound=False)
    if not verdict.bounded:
        raise UnrepresentableError(verdict)
    closure = build_closure(m, max_states=max_states)
    verdict = BranchingVerdict(True, bound=closure.branching_bound(), max_clique=closure.max_dimension(),
                               state_map=verdict.state_map)
    phi = generate_constraints(closure, m)
    assignment = solve_constraints(phi)
    machine = machine_from_assignment(closure, assignment)
    return Synthesis(machine, m, classification, verdict, closure, phi, assignment)


def synthesize_mealy(r: TwoTapeDfa, max_states: int | None = None) -> MealyMachine:
    return synthesize(r, max_states).machine


__all__ = [
    "StateMatrix", "MatrixIndexState", "ClosureAutomaton", "ConstraintSet", "Synthesis", "DisjointSet",
    "transform", "successor", "initial_state", "build_closure", "generate_constraints", "solve_constraints",
    "synthesize", "synthesize_mealy", "machine_from_assignment",
    "InvalidRelationError", "UnrepresentableError", "InfeasibleConstraintsError", "PumpingWitness",
]
