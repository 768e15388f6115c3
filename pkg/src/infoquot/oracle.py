"""Brute-force reference computations by explicit enumeration of histories.

Everything here touches a relation automaton only through `run`/`delta` and
its accepting set; no product, projection or minimisation code is shared
with the pipeline.  Costs grow like |Γ|^(2·depth), hence the depth budgets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .automata import InputError, MealyMachine, TwoTapeDfa
from .synthesis import MatrixIndexState, StateMatrix

MAX_PARTITION_DEPTH = 8
MAX_MATRIX_DEPTH = 6
MAX_KERNEL_DEPTH = 6


def _check_depth(depth: int, cap: int | None, default: int) -> None:
    cap = default if cap is None else cap
    if depth < 0:
        raise InputError("depth must be nonnegative")
    if depth > cap:
        raise InputError(f"depth {depth} exceeds the oracle budget of {cap}")


def histories(letters, length: int):
    """All words of `length` in lexicographic order of `letters`."""
    return [tuple(w) for w in product(letters, repeat=length)]


@dataclass(frozen=True)
class PartitionTable:
    """Information sets of every length up to `depth`.

    ``classes[l]`` lists the classes of length-l histories, each a tuple of
    histories in lexicographic order; classes are ordered by their least member.
    """

    depth: int
    classes: tuple

    def class_of(self, history) -> tuple:
        history = tuple(history)
        for cls in self.classes[len(history)]:
            if history in cls:
                return cls
        raise KeyError(history)

    def index_of(self, history) -> int:
        history = tuple(history)
        for i, cls in enumerate(self.classes[len(history)]):
            if history in cls:
                return i
        raise KeyError(history)

    def format(self) -> str:
        lines = []
        for length, level in enumerate(self.classes):
            rendered = ["{" + ",".join(_show(w) for w in cls) + "}" for cls in level]
            lines.append(f"{length}: " + " ".join(rendered))
        return "\n".join(lines)


def _show(word) -> str:
    if not word:
        return "ε"
    if all(isinstance(s, str) and len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(map(str, word))


def enumerate_partition(r: TwoTapeDfa, depth: int, max_depth: int | None = None) -> PartitionTable:
    """Information sets up to `depth`, found by running `r` on same-length pairs.

    Candidates for a history's class are restricted to children of its
    parent's class, which is sound for validated relations (perfect recall).
    """
    _check_depth(depth, max_depth, MAX_PARTITION_DEPTH)
    letters = r.base.symbols
    key = r.base.key
    levels = [(((),),)]
    for _ in range(depth):
        level = []
        for parent in levels[-1]:
            reps, groups = [], []
            for w in sorted((h + (c,) for h in parent for c in letters), key=key):
                for i, rep in enumerate(reps):
                    if r.run(tuple(zip(rep, w))) in r.accepting:
                        groups[i].append(w)
                        break
                else:
                    reps.append(w)
                    groups.append([w])
            level.extend(tuple(g) for g in groups)
        level.sort(key=lambda cls: key(cls[0]))
        levels.append(tuple(level))
    return PartitionTable(depth, tuple(levels))


@dataclass(frozen=True)
class InfoTreeSlice:
    """The information tree cut at `depth`; nodes are ``(length, class number)``.

    Edges reach one level further so that every node up to `depth` has its
    full branching degree.
    """

    depth: int
    partition: PartitionTable
    edges: tuple
    degrees: dict

    @property
    def nodes(self) -> list:
        return [(l, i) for l, level in enumerate(self.partition.classes) for i in range(len(level))]

    def node_of(self, history) -> tuple:
        return len(tuple(history)), self.partition.index_of(history)

    def degree_of(self, history) -> int:
        return self.degrees[self.node_of(history)]

    def max_degree(self) -> int:
        return max(self.degrees.values())

    def to_dot(self) -> str:
        lines = ["digraph information_tree {", "  node [shape=box];"]
        for l, i in self.nodes:
            members = self.partition.classes[l][i]
            text = ",".join(_show(w) for w in members[:6]) + (",…" if len(members) > 6 else "")
            lines.append(f'  "{l}.{i}" [label="{{{text}}}"];')
        for (l, i), (m, j) in self.edges:
            lines.append(f'  "{l}.{i}" -> "{m}.{j}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def info_tree(r: TwoTapeDfa, depth: int, max_depth: int | None = None) -> InfoTreeSlice:
    _check_depth(depth + 1, max_depth, MAX_PARTITION_DEPTH)
    table = enumerate_partition(r, depth + 1, max_depth)
    edges, degrees = [], {}
    for l in range(depth + 1):
        where = {w: j for j, cls in enumerate(table.classes[l + 1]) for w in cls}
        for i, cls in enumerate(table.classes[l]):
            children = sorted({where[w + (c,)] for w in cls for c in r.base})
            degrees[(l, i)] = len(children)
            edges.extend(((l, i), (l + 1, j)) for j in children)
    return InfoTreeSlice(depth, table, tuple(edges), degrees)


def rank_observation(r: TwoTapeDfa, depth: int, max_depth: int | None = None) -> dict:
    """Rank of each nonempty history of length <= depth among the children of its parent's class.

    Children are ordered by their lexicographically least member; ranks start at 1.
    """
    table = enumerate_partition(r, depth, max_depth)
    key = r.base.key
    rank = {}
    for l in range(depth):
        where = {w: cls for cls in table.classes[l + 1] for w in cls}
        for parent in table.classes[l]:
            children = {where[w + (c,)] for w in parent for c in r.base}
            ordered = sorted(children, key=lambda cls: key(cls[0]))
            position = {cls: i + 1 for i, cls in enumerate(ordered)}
            for w in parent:
                for c in r.base:
                    rank[w + (c,)] = position[where[w + (c,)]]
    return rank


def rank_machine_observations(ranks: dict, history) -> tuple:
    """Observation history induced by a rank table."""
    history = tuple(history)
    return tuple(ranks[history[:t]] for t in range(1, len(history) + 1))


def brute_matrix(r: TwoTapeDfa, history, max_depth: int | None = None) -> MatrixIndexState:
    """matrix(τ) and index(τ) straight from the definitions.

    [τ] is enumerated, split into classes of histories that lead to the same
    state against every third history, the classes are ordered by least member
    and ``M[i][j] = δ(q_I, (τ_i, τ_j))`` for those least members.
    """
    tau = r.base.word(history)
    n = len(tau)
    _check_depth(n, max_depth, MAX_MATRIX_DEPTH)
    words = histories(r.base.symbols, n)
    info_set = [w for w in words if r.run(tuple(zip(tau, w))) in r.accepting]
    signature = {}
    for w in info_set:
        signature.setdefault(tuple(r.run(tuple(zip(w, p))) for p in words), []).append(w)
    classes = sorted((min(ws, key=r.base.key) for ws in signature.values()), key=r.base.key)
    owner = next(ws for ws in signature.values() if tau in ws)
    least = min(owner, key=r.base.key)
    entries = [[r.run(tuple(zip(a, b))) for b in classes] for a in classes]
    return MatrixIndexState(StateMatrix(entries), classes.index(least) + 1)


def kernel_equal(m: MealyMachine, r: TwoTapeDfa, depth: int = MAX_KERNEL_DEPTH, max_depth: int | None = None):
    """Compare equality of observation histories with acceptance by `r` on all pairs up to `depth`.

    Returns ``(True, None)`` or ``(False, (τ, τ'))`` for the least disagreeing
    pair (shortest, then lexicographic on the first history, then the second).
    """
    _check_depth(depth, max_depth, MAX_KERNEL_DEPTH)
    if tuple(m.alphabet.symbols) != tuple(r.base.symbols):
        raise InputError("machine and relation use different move alphabets")
    letters = r.base.symbols
    # layer entries: (τ, τ') -> (relation state, machine states, observations agree so far)
    layer = {((), ()): (r.initial, (m.initial, m.initial), True)}
    if r.initial not in r.accepting:
        return False, ((), ())
    for _ in range(depth):
        nxt = {}
        for (t1, t2), (q, (p1, p2), same) in layer.items():
            for a in letters:
                for b in letters:
                    agree = same and m.output[(p1, a)] == m.output[(p2, b)]
                    nxt[(t1 + (a,), t2 + (b,))] = (r.delta[(q, (a, b))], (m.delta[(p1, a)], m.delta[(p2, b)]), agree)
        bad = [pair for pair, (q, _, agree) in nxt.items() if (q in r.accepting) != agree]
        if bad:
            return False, min(bad, key=lambda pair: (r.base.key(pair[0]), r.base.key(pair[1])))
        layer = nxt
    return True, None


def relation_pairs(r: TwoTapeDfa, length: int) -> set:
    """All accepted pairs of one length, by enumeration."""
    words = histories(r.base.symbols, length)
    return {(x, y) for x in words for y in words if r.run(tuple(zip(x, y))) in r.accepting}
