"""Plain-text automaton files and Graphviz export.

Grammar (one item per line, ``#`` starts a comment, tokens are separated by
whitespace)::

    kind relation | mealy
    alphabet SYM...
    observations OBS...            (mealy only)
    states STATE...
    initial STATE
    accepting STATE...             (relation only; may be empty)
    STATE SYM SYM -> STATE         (relation transition)
    STATE SYM -> STATE : OBS       (mealy transition)

Observation tokens that look like integers are read as ints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .automata import Alphabet, AutomatonError, Dfa, MealyMachine, Nfa, TwoTapeDfa, complete_to_sink

HEADERS = ("kind", "alphabet", "observations", "states", "initial", "accepting")
_INT = re.compile(r"-?\d+\Z")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [_Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if tokens:
            yield lineno, tokens


def _observation(token: str):
    return int(token) if _INT.match(token) else token


def parse(text: str | bytes, complete_with_sink: bool = False):
    """Parse a relation or Mealy file into a `TwoTapeDfa` or `MealyMachine`.

    With `complete_with_sink`, missing relation transitions go to one fresh
    rejecting sink; otherwise any hole is an error naming the (state, symbol).
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(1, 1, f"file is not UTF-8 ({exc.reason})") from None
    headers = {}
    transitions = []
    last_line = 1
    for lineno, tokens in _tokenize(text):
        last_line = lineno
        head = tokens[0]
        if head.text in HEADERS:
            if head.text in headers:
                raise ParseError(lineno, head.column, f"duplicate '{head.text}' line")
            headers[head.text] = tokens
        elif any(t.text == "->" for t in tokens):
            transitions.append(tokens)
        else:
            raise ParseError(lineno, head.column,
                             f"expected one of {', '.join(HEADERS)} or a transition, got {head.text!r}")
    if not headers and not transitions:
        raise ParseError(1, 1, "empty file: expected 'kind relation' or 'kind mealy'")
    if "kind" not in headers:
        raise ParseError(1, 1, "missing 'kind' line")
    kind_tokens = headers["kind"]
    if len(kind_tokens) != 2 or kind_tokens[1].text not in ("relation", "mealy"):
        t = kind_tokens[1] if len(kind_tokens) > 1 else kind_tokens[0]
        raise ParseError(t.line, t.column, "expected 'kind relation' or 'kind mealy'")
    kind = kind_tokens[1].text
    required = ["alphabet", "states", "initial"] + (["accepting"] if kind == "relation" else ["observations"])
    for name in required:
        if name not in headers:
            raise ParseError(last_line, 1, f"missing '{name}' line")
    unexpected = "observations" if kind == "relation" else "accepting"
    if unexpected in headers:
        t = headers[unexpected][0]
        raise ParseError(t.line, t.column, f"'{unexpected}' is not allowed in a {kind} file")

    def names(section, at_least=1):
        tokens = headers[section][1:]
        if len(tokens) < at_least:
            t = headers[section][0]
            raise ParseError(t.line, t.column + len(t.text), f"'{section}' needs at least {at_least} name(s)")
        seen = {}
        for t in tokens:
            if t.text in seen:
                raise ParseError(t.line, t.column, f"duplicate name {t.text!r} in '{section}'")
            seen[t.text] = t
        return [t.text for t in tokens]

    base = Alphabet(tuple(names("alphabet")))
    states = names("states")
    known = set(states)
    init = headers["initial"]
    if len(init) != 2:
        raise ParseError(init[0].line, init[0].column, "'initial' takes exactly one state")
    if init[1].text not in known:
        raise ParseError(init[1].line, init[1].column, f"unknown state {init[1].text!r}")

    def state(t):
        if t.text not in known:
            raise ParseError(t.line, t.column, f"unknown state {t.text!r}")
        return t.text

    def symbol(t):
        if t.text not in base:
            raise ParseError(t.line, t.column, f"unknown symbol {t.text!r}")
        return t.text

    if kind == "relation":
        accepting = [state(t) for t in headers["accepting"][1:]]
        delta, where = {}, {}
        for tokens in transitions:
            if len(tokens) != 5 or tokens[3].text != "->":
                raise ParseError(tokens[0].line, tokens[0].column, "expected 'STATE SYM SYM -> STATE'")
            key = (state(tokens[0]), (symbol(tokens[1]), symbol(tokens[2])))
            if key in delta:
                raise ParseError(tokens[0].line, tokens[0].column,
                                 f"duplicate transition for ({key[0]}, {key[1][0]} {key[1][1]}); "
                                 f"first given on line {where[key]}")
            delta[key] = state(tokens[4])
            where[key] = tokens[0].line
        pairs = Alphabet.pairs(base)
        holes = [(q, c) for q in states for c in pairs if (q, c) not in delta]
        if holes and not complete_with_sink:
            q, (a, b) = holes[0]
            raise ParseError(last_line, 1, f"transition function is partial: no transition for ({q}, {a} {b})"
                             f"{f' and {len(holes) - 1} more' if len(holes) > 1 else ''}; "
                             "pass --complete-with-sink to add a rejecting sink")
        if holes:
            nfa = Nfa(pairs, states, {init[1].text}, {k: ((None, t),) for k, t in delta.items()}, accepting)
            return complete_to_sink(nfa)
        return TwoTapeDfa(pairs, states, init[1].text, delta, accepting)

    observations = names("observations")
    obs_known = set(observations)
    delta, output, where = {}, {}, {}
    for tokens in transitions:
        if len(tokens) != 6 or tokens[2].text != "->" or tokens[4].text != ":":
            raise ParseError(tokens[0].line, tokens[0].column, "expected 'STATE SYM -> STATE : OBS'")
        key = (state(tokens[0]), symbol(tokens[1]))
        if key in delta:
            raise ParseError(tokens[0].line, tokens[0].column,
                             f"duplicate transition for ({key[0]}, {key[1]}); first given on line {where[key]}")
        if tokens[5].text not in obs_known:
            raise ParseError(tokens[5].line, tokens[5].column, f"unknown observation {tokens[5].text!r}")
        delta[key] = state(tokens[3])
        output[key] = _observation(tokens[5].text)
        where[key] = tokens[0].line
    holes = [(q, c) for q in states for c in base if (q, c) not in delta]
    if holes:
        q, c = holes[0]
        raise ParseError(last_line, 1, f"transition function is partial: no transition for ({q}, {c})"
                         f"{f' and {len(holes) - 1} more' if len(holes) > 1 else ''}")
    try:
        return MealyMachine(base, Alphabet(tuple(_observation(o) for o in observations)), states,
                            init[1].text, delta, output)
    except AutomatonError as exc:
        raise ParseError(headers["observations"][0].line, 1, str(exc)) from None


def label(x) -> str:
    """Whitespace-free token for a state or symbol; tuples render as ``(p1,p1)``."""
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(label(y) for y in x)) + "}"
    text = str(x)
    if not text or any(ch.isspace() for ch in text) or "#" in text:
        raise AutomatonError(f"name {text!r} cannot be written as a token")
    return text


def serialize(a) -> str:
    """Canonical text form; `parse` reads it back to the same automaton."""
    lines = []
    if isinstance(a, MealyMachine):
        lines += ["kind mealy",
                  "alphabet " + " ".join(map(label, a.alphabet)),
                  "observations " + " ".join(map(label, a.outputs)),
                  "states " + " ".join(map(label, a.states)),
                  f"initial {label(a.initial)}"]
        for q in a.states:
            for c in a.alphabet:
                lines.append(f"{label(q)} {label(c)} -> {label(a.delta[(q, c)])} : {label(a.output[(q, c)])}")
    elif isinstance(a, TwoTapeDfa):
        lines += ["kind relation",
                  "alphabet " + " ".join(map(label, a.base)),
                  "states " + " ".join(map(label, a.states)),
                  f"initial {label(a.initial)}",
                  ("accepting " + " ".join(label(q) for q in a.states if q in a.accepting)).rstrip()]
        for q in a.states:
            for x, y in a.alphabet:
                lines.append(f"{label(q)} {label(x)} {label(y)} -> {label(a.delta[(q, (x, y))])}")
    else:
        raise TypeError(f"cannot serialize {type(a).__name__}")
    return "\n".join(lines) + "\n"


def _dot_id(x) -> str:
    return '"' + label(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(a, name: str = "automaton") -> str:
    """Graphviz digraph with one edge per transition; accepting states are double circles."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    accepting = a.accepting if isinstance(a, Dfa) else frozenset()
    for q in a.states:
        shape = "doublecircle" if q in accepting else "circle"
        lines.append(f"  {_dot_id(q)} [shape={shape}];")
    lines.append(f"  __start -> {_dot_id(a.initial)};")
    for q in a.states:
        for c in a.alphabet:
            if isinstance(a, MealyMachine):
                text = f"{label(c)}/{label(a.output[(q, c)])}"
            elif isinstance(a, TwoTapeDfa):
                text = f"{label(c[0])},{label(c[1])}"
            else:
                text = label(c)
            lines.append(f"  {_dot_id(q)} -> {_dot_id(a.delta[(q, c)])} [label=\"{text}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
