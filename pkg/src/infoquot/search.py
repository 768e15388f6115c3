"""Least-witness search over implicitly given multi-tape automata."""

from __future__ import annotations

from typing import Callable, Hashable, Sequence


def least_word(initial: Hashable, step: Callable, letters: Sequence[tuple], is_target: Callable,
               tape_alphabets: Sequence[Sequence], tape_order: Sequence[int] | None = None):
    """Shortest letter sequence leading from `initial` to a target state.

    Letters are tuples with one component per tape.  Among the shortest
    sequences the result is least in the lexicographic order of the tapes,
    compared one whole tape at a time in `tape_order` (default: tape 0 first).
    `step(state, letter)` may return None for a missing transition.
    Returns a tuple of letters, or None when no target is reachable.
    """
    cache = {}

    def go(s, l):
        key = (s, l)
        if key not in cache:
            cache[key] = step(s, l)
        return cache[key]

    if is_target(initial):
        return ()
    seen = {initial}
    frontier = [initial]
    length = 0
    found = False
    while frontier and not found:
        length += 1
        nxt = []
        for s in frontier:
            for l in letters:
                t = go(s, l)
                if t is None or t in seen:
                    continue
                seen.add(t)
                nxt.append(t)
                found = found or is_target(t)
        frontier = nxt
    if not found:
        return None

    layers = [{initial}]
    for _ in range(length):
        layers.append({t for s in layers[-1] for l in letters if (t := go(s, l)) is not None})

    ntapes = len(tape_alphabets)
    order = list(range(ntapes)) if tape_order is None else list(tape_order)
    fixed: dict[int, list] = {}

    def consistent(l, t):
        return all(l[k] == fixed[k][t] for k in fixed)

    for tape in order:
        back = [set() for _ in range(length + 1)]
        back[length] = {s for s in layers[length] if is_target(s)}
        for t in range(length - 1, -1, -1):
            back[t] = {s for s in layers[t]
                       if any(consistent(l, t) and go(s, l) in back[t + 1] for l in letters)}
        current = {initial}
        chosen = []
        for t in range(length):
            for symbol in tape_alphabets[tape]:
                nxt = {u for s in current for l in letters
                       if l[tape] == symbol and consistent(l, t) and (u := go(s, l)) in back[t + 1]}
                if nxt:
                    chosen.append(symbol)
                    current = nxt
                    break
            else:  # pragma: no cover - back sets guarantee a continuation
                raise AssertionError("witness reconstruction lost its target")
        fixed[tape] = chosen
    return tuple(tuple(fixed[k][t] for k in range(ntapes)) for t in range(length))
