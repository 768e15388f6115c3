"""Command-line interface.

Exit codes: 0 for a positive answer, 1 for a negative one (invalid,
unbounded, not equivalent), 2 for usage, parse and resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automata import (AutomatonError, MealyMachine, ResourceLimitError, TwoTapeDfa, equivalence_witness,
                       format_word, minimize, unzip)
from .formats import ParseError, export_dot, label, parse, serialize
from .oracle import enumerate_partition, info_tree
from .relation import mealy_to_relation, validate
from .structure import decide_bounded_branching
from .synthesis import InvalidRelationError, UnrepresentableError, synthesize

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


def _load(path: str, complete_with_sink: bool):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(data, complete_with_sink=complete_with_sink)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _relation(path: str, args) -> TwoTapeDfa:
    a = _load(path, args.complete_with_sink)
    return mealy_to_relation(a) if isinstance(a, MealyMachine) else a


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(args, command: str, payload: dict) -> None:
    _emit(args, json.dumps({"formatVersion": FORMAT_VERSION, "command": command, **payload},
                           indent=2, ensure_ascii=False) + "\n")


def _automaton_text(args, a) -> str:
    return export_dot(a) if args.dot else serialize(a)


def _words(words) -> list:
    return ["".join(map(label, w)) if all(len(label(s)) == 1 for s in w) else [label(s) for s in w] for w in words]


def cmd_validate(args) -> int:
    r = _relation(args.file, args)
    report = validate(r)
    if args.json:
        _json(args, "validate", report.to_dict())
    else:
        _emit(args, report.describe() + "\n")
    return 0 if report.valid else 1


def cmd_from_mealy(args) -> int:
    m = _load(args.file, args.complete_with_sink)
    if not isinstance(m, MealyMachine):
        raise UsageError(f"{args.file}: expected a mealy file, got a relation")
    r = mealy_to_relation(m)
    if args.json:
        _json(args, "from-mealy", {"states": len(r.states), "automaton": serialize(r)})
    else:
        _emit(args, _automaton_text(args, r))
    return 0


def _witness_dict(verdict) -> dict:
    w = verdict.witness
    return {"kind": w.kind, "p": label(w.p), "q": label(w.q), "word": _words([w.word])[0],
            "runs": _words(w.runs), "prefix": _words([w.prefix])[0], "suffix": _words([w.suffix])[0]}


def _describe_witness(verdict) -> str:
    w = verdict.witness
    lines = [f"pumping word: {format_word(w.word)}",
             f"ambiguity: {w.kind} (states p={label(w.p)}, q={label(w.q)} of the decision automaton)",
             "runs on the word (decorations): " + " | ".join(format_word(d) for d in w.runs),
             f"prefix: {format_word(w.prefix)}  suffix: {format_word(w.suffix)}",
             "histories prefix·word^n·suffix have a growing number of successors"]
    merged = {q: members for q, members in verdict.state_map.items() if members != (q,)}
    if merged:
        lines.append("minimized states: " + ", ".join(
            f"{label(q)}={{{','.join(map(label, ms))}}}" for q, ms in merged.items()))
    return "\n".join(lines)


def _invalid(args, command: str, report) -> int:
    if args.json:
        _json(args, command, {"error": "invalid-relation", "validation": report.to_dict()})
    print("error: not an indistinguishability relation with perfect recall", file=sys.stderr)
    print(report.describe(), file=sys.stderr)
    return 1


def cmd_to_mealy(args) -> int:
    r = _relation(args.file, args)
    try:
        result = synthesize(r, max_states=args.max_states)
    except InvalidRelationError as exc:
        return _invalid(args, "to-mealy", exc.report)
    except UnrepresentableError as exc:
        if args.json:
            _json(args, "to-mealy", {"error": "unbounded", "witness": _witness_dict(exc.verdict)})
        print("error: the relation has unbounded branching and no observation function represents it",
              file=sys.stderr)
        print(_describe_witness(exc.verdict), file=sys.stderr)
        return 1
    m = result.machine
    if args.json:
        _json(args, "to-mealy", {"states": len(m.states), "observations": len(m.outputs),
                                 "bound": result.verdict.bound, "maxClique": result.verdict.max_clique,
                                 "machine": serialize(m)})
    else:
        _emit(args, _automaton_text(args, m))
        print(f"{len(m.states)} states, {len(m.outputs)} observation symbols", file=sys.stderr)
    return 0


def cmd_check_bounded(args) -> int:
    r = _relation(args.file, args)
    report = validate(r)
    if not report.valid:
        return _invalid(args, "check-bounded", report)
    verdict = decide_bounded_branching(r, max_states=args.max_states)
    if args.json:
        payload = {"kind": verdict.kind, "bound": verdict.bound, "maxClique": verdict.max_clique,
                   "witness": None if verdict.bounded else _witness_dict(verdict),
                   "stateMap": {label(q): [label(x) for x in ms] for q, ms in verdict.state_map.items()}}
        _json(args, "check-bounded", payload)
    elif verdict.bounded:
        _emit(args, f"Bounded\nbound: {verdict.bound}\nmax clique: {verdict.max_clique}\n")
    else:
        _emit(args, "Unbounded\n" + _describe_witness(verdict) + "\n")
    return 0 if verdict.bounded else 1


def cmd_minimize(args) -> int:
    a = _load(args.file, args.complete_with_sink)
    if isinstance(a, MealyMachine):
        raise UsageError(f"{args.file}: minimize expects a relation file")
    m = minimize(a)
    if args.json:
        _json(args, "minimize", {"states": len(m.states), "automaton": serialize(m)})
    else:
        _emit(args, _automaton_text(args, m))
    return 0


def cmd_equiv(args) -> int:
    r1, r2 = _relation(args.first, args), _relation(args.second, args)
    if r1.base.symbols != r2.base.symbols:
        raise UsageError("the two files declare different alphabets")
    w = equivalence_witness(r1, r2)
    if w is None:
        payload, text = {"equivalent": True, "witness": None}, "equivalent\n"
    else:
        x, y = unzip(w)
        which = args.first if r1.accepts(w) else args.second
        payload = {"equivalent": False, "witness": _words([x, y]), "acceptedBy": which}
        text = f"not equivalent\nwitness: ({format_word(x)}, {format_word(y)}) accepted only by {which}\n"
    if args.json:
        _json(args, "equiv", payload)
    else:
        _emit(args, text)
    return 0 if w is None else 1


def _depth(args, default: int) -> int:
    return default if args.depth is None else args.depth


def cmd_tree(args) -> int:
    r = _relation(args.file, args)
    depth = _depth(args, 4)
    tree = info_tree(r, depth, max_depth=max(depth + 1, 8))
    if args.dot:
        _emit(args, tree.to_dot())
        return 0
    classes = tree.partition.classes
    if args.json:
        nodes = [{"id": f"{l}.{i}", "length": l, "members": _words(classes[l][i]),
                  "degree": tree.degrees.get((l, i))} for l, i in tree.nodes if l <= depth]
        _json(args, "tree", {"depth": depth, "nodes": nodes, "maxDegree": tree.max_degree()})
        return 0
    lines = []
    for l, i in tree.nodes:
        if l > depth:
            continue
        members = classes[l][i]
        shown = ",".join(format_word(w) for w in members[:8]) + (",…" if len(members) > 8 else "")
        lines.append(f"{l}.{i} degree {tree.degrees[(l, i)]} size {len(members)} {{{shown}}}")
    lines.append(f"max degree: {tree.max_degree()}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_oracle_partition(args) -> int:
    r = _relation(args.file, args)
    depth = _depth(args, 4)
    table = enumerate_partition(r, depth, max_depth=max(depth, 8))
    if args.json:
        _json(args, "oracle-partition", {"depth": depth, "classes": [[_words(c) for c in level]
                                                                    for level in table.classes]})
    else:
        _emit(args, table.format() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--complete-with-sink", action="store_true",
                        help="route missing relation transitions to a fresh rejecting sink")
    shared.add_argument("--max-states", type=int, default=None, metavar="N",
                        help="state budget for subset and closure constructions (default 1000000)")
    shared.add_argument("--depth", type=int, default=None, metavar="N", help="enumeration depth for tree/oracle")
    shared.add_argument("--dot", action="store_true", help="print Graphviz DOT instead of the text format")
    shared.add_argument("--json", action="store_true", help="machine-readable output")
    shared.add_argument("-o", "--output", metavar="OUT", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="infoquot", description="Convert between observation functions and indistinguishability relations.",
                                     epilog="exit codes: 0 yes, 1 no, 2 usage, parse or resource error")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    table = [
        ("validate", cmd_validate, "check the indistinguishability axioms and perfect recall", ["file"]),
        ("from-mealy", cmd_from_mealy, "relation induced by a Mealy machine", ["file"]),
        ("to-mealy", cmd_to_mealy, "synthesize an observation Mealy machine", ["file"]),
        ("check-bounded", cmd_check_bounded, "decide bounded branching of the information tree", ["file"]),
        ("minimize", cmd_minimize, "minimal automaton of a relation", ["file"]),
        ("equiv", cmd_equiv, "language equivalence of two relations", ["first", "second"]),
        ("tree", cmd_tree, "information tree with branching degrees", ["file"]),
        ("oracle-partition", cmd_oracle_partition, "information sets per length, by enumeration", ["file"]),
    ]
    for name, fn, text, positionals in table:
        p = sub.add_parser(name, help=text, description=text, parents=[shared])
        for pos in positionals:
            p.add_argument(pos, metavar=pos.upper() if pos == "file" else f"FILE{1 if pos == 'first' else 2}")
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AutomatonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
