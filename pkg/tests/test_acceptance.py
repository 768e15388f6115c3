"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed even
without ``-s``) or directly with ``python tests/test_acceptance.py``.
"""

import io
import random
import time
from contextlib import redirect_stderr, redirect_stdout
from itertools import product

import pytest

from infoquot import cli, examples, oracle
from infoquot.automata import language_equivalent, minimize, pairwise
from infoquot.relation import mealy_to_relation, validate
from infoquot.structure import classify_states, decide_bounded_branching, decision_automaton
from infoquot.synthesis import (DisjointSet, MatrixIndexState, StateMatrix, UnrepresentableError, build_closure,
                                generate_constraints, initial_state, successor, synthesize, transform)

from conftest import random_mealy

pytestmark = pytest.mark.acceptance

M = StateMatrix([["q1", "q3"], ["q4", "q2"]])
# variables of the worked constraint example, in reading order of the closure states
WORKED_NAMES = dict(zip("xyzrstuv", [(p, c) for p in range(4) for c in "ab"]))
CORPUS = ("fig1b", "fig2", "fig3_k3", "perfect", "blind")


@pytest.fixture
def report(capsys):
    def emit(number, title, checks, elapsed):
        failed = [name for name, ok in checks.items() if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number} [{status}] {title} ({elapsed:.2f}s)"
        if failed:
            line += "  failed: " + "; ".join(failed)
        with capsys.disabled():
            print("\n" + line)
        assert not failed, line
    return emit


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def path(name):
    return str(examples.corpus_path(name))


def test_running_example_round_trip(report):
    checks = {}
    t0 = time.perf_counter()
    code, text, _ = run_cli("from-mealy", path("fig1a.mealy"), "-o", "/dev/null")
    induced = mealy_to_relation(examples.machine("fig1a"))
    checks["from-mealy equivalent to fig1b"] = code == 0 and language_equivalent(induced, examples.relation("fig1b"))
    code, _, _ = run_cli("equiv", path("fig1a.mealy"), path("fig1b.rel"))
    elapsed_equiv = time.perf_counter() - t0
    checks["equiv exits 0"] = code == 0
    checks["equivalence check under 1 s"] = elapsed_equiv < 1.0
    r = examples.relation("fig1b")
    m = synthesize(r).machine
    checks["to-mealy has 4 states"] = len(m.states) == 4
    checks["to-mealy has 2 observation symbols"] = len(m.outputs) == 2
    checks["kernel equal to depth 6"] = oracle.kernel_equal(m, r, 6)[0]
    code, text, _ = run_cli("oracle-partition", path("fig1b.rel"), "--depth", "2")
    checks["length-2 partition is {aa,ab,bb} {ba}"] = code == 0 and "2: {aa,ab,bb} {ba}" in text.splitlines()
    report(1, "running example round trip", checks, time.perf_counter() - t0)


def test_classification(report):
    t0 = time.perf_counter()
    c = classify_states(minimize(examples.relation("fig1b")))
    checks = {"reflexive = {q1,q2}": c.reflexive == {"q1", "q2"},
              "ambiguous = {q3,q4,⊥}": c.ambiguous == {"q3", "q4", "⊥"},
              "reflexive and ambiguous partition the states": c.reflexive.isdisjoint(c.ambiguous)
              and c.reflexive | c.ambiguous == set(minimize(examples.relation("fig1b")).states)}
    report(2, "state classification", checks, time.perf_counter() - t0)


def test_unbounded_example(report):
    t0 = time.perf_counter()
    r = examples.relation("fig2")
    checks = {}
    code, text, _ = run_cli("check-bounded", path("fig2.rel"))
    checks["check-bounded exits 1"] = code == 1 and text.startswith("Unbounded")
    v = decide_bounded_branching(r)
    m = minimize(r)
    w = v.witness
    checks["witness replays on decision automaton"] = w is not None and w.replays(
        decision_automaton(m, classify_states(m)))
    tree = oracle.info_tree(r, 6, max_depth=7)
    grow = [tree.degree_of(w.prefix + w.word * n) for n in range(1, 6 - len(w.prefix) + 1)]
    checks["degrees grow along the pumped histories"] = all(a < b for a, b in zip(grow, grow[1:]))
    code, _, err = run_cli("to-mealy", path("fig2.rel"))
    checks["to-mealy refuses"] = code == 1 and "unbounded" in err
    with pytest.raises(UnrepresentableError):
        synthesize(r)
    t1 = time.perf_counter()
    code, text, _ = run_cli("tree", path("fig2.rel"), "--depth", "5", "--json")
    tree = oracle.info_tree(r, 5)
    degrees = [tree.degree_of("a" * n) for n in range(1, 6)]
    checks["tree exits 0"] = code == 0
    checks["degree >= 2^n at {a,b}^n"] = all(d >= 2 ** n for n, d in zip(range(1, 6), degrees))
    checks["degree == 2^n + 1 at {a,b}^n"] = degrees == [2 ** n + 1 for n in range(1, 6)]
    checks["tree under 5 s"] = time.perf_counter() - t1 < 5.0
    report(3, f"unbounded branching, degrees {degrees}", checks, time.perf_counter() - t0)


def test_exponential_family(report):
    t0 = time.perf_counter()
    checks, sizes = {}, []
    for k in range(1, 7):
        tk = time.perf_counter()
        r = examples.embargo(k)
        m = synthesize(r).machine
        sizes.append(len(m.outputs))
        checks[f"k={k} at least 2^k symbols"] = len(m.outputs) >= 2 ** k
        checks[f"k={k} kernel equal to depth {k + 3}"] = oracle.kernel_equal(m, r, k + 3, max_depth=k + 3)[0]
        if k == 6:
            checks["k=6 under 60 s"] = time.perf_counter() - tk < 60.0
    report(4, f"exponential family, symbols {sizes}", checks, time.perf_counter() - t0)


def test_worked_matrix_values(report):
    t0 = time.perf_counter()
    m = minimize(examples.relation("fig1b"))
    expected = (("q1", "q3", "⊥", "q1"), ("q4", "q2", "⊥", "q4"), ("⊥", "⊥", "q2", "⊥"), ("q1", "q3", "⊥", "q1"))
    checks = {"transform 4x4": transform(M, m).entries == expected,
              "successor_a(M,2) = ([q2],1)": successor(M, 2, "a", m) == MatrixIndexState(StateMatrix([["q2"]]), 1),
              "successor_b(M,2) = (M,1)": successor(M, 2, "b", m) == MatrixIndexState(M, 1)}
    phi = generate_constraints(build_closure(m), m)
    ds = DisjointSet(phi.variables)
    for u, v in phi.equalities:
        ds.union(u, v)
    names = {v: k for k, v in WORKED_NAMES.items()}
    groups = {}
    for var in phi.variables:
        groups.setdefault(ds.find(var), set()).add(names[var])
    classes = {frozenset(g) for g in groups.values()}
    diseq = {frozenset({frozenset(groups[ds.find(u)]), frozenset(groups[ds.find(v)])})
             for u, v in phi.disequalities}
    want = {frozenset("xy"), frozenset("zrt"), frozenset("s"), frozenset("u"), frozenset("v")}
    checks["equality classes {x,y} {z,r,t}"] = classes == want
    checks["disequalities t!=s, u!=v"] = diseq == {frozenset({frozenset("zrt"), frozenset("s")}),
                                                  frozenset({frozenset("u"), frozenset("v")})}
    report(5, "worked matrix and constraint values", checks, time.perf_counter() - t0)


def test_random_round_trip(report):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    failures = []
    for case in range(200):
        m = random_mealy(rng)
        r = mealy_to_relation(m)
        try:
            if not validate(r).valid:
                failures.append((case, "invalid"))
                continue
            if not decide_bounded_branching(r).bounded:
                failures.append((case, "unbounded"))
                continue
            back = mealy_to_relation(synthesize(r).machine)
            if not language_equivalent(back, r):
                failures.append((case, "not equivalent"))
        except Exception as exc:  # noqa: BLE001 - any error counts as a failed case
            failures.append((case, type(exc).__name__))
    elapsed = time.perf_counter() - t0
    checks = {f"all 200 cases round trip {failures[:3]}": not failures, "under 120 s": elapsed < 120.0}
    report(6, "seeded random Mealy round trip", checks, elapsed)


def _iterate(m, history):
    s = initial_state(m)
    for c in history:
        s = successor(s.matrix, s.index, c, m)
    return s


def test_oracle_agreement(report):
    t0 = time.perf_counter()
    checks = {}
    for name in CORPUS:
        m = minimize(examples.relation(name))
        letters = m.base.symbols
        if decide_bounded_branching(m, with_bound=False).bounded:
            closure = build_closure(m)
            step = closure.run
            state = lambda h: closure.states[step(h)]  # noqa: E731
        else:
            state = lambda h: _iterate(m, h)  # noqa: E731
        agree = all(state(h) == oracle.brute_matrix(m, h)
                    for n in range(7) for h in product(letters, repeat=n))
        checks[f"{name}: matrices to depth 6"] = agree
        ranks = oracle.rank_observation(m, 6)
        obs = {h: oracle.rank_machine_observations(ranks, h) for n in range(7) for h in product(letters, repeat=n)}
        checks[f"{name}: rank kernel to depth 6"] = all(
            (obs[x] == obs[y]) == m.accepts(pairwise(x, y))
            for n in range(7) for x in product(letters, repeat=n) for y in product(letters, repeat=n))
    for name in CORPUS + examples.MUTATIONS:
        r = examples.relation(name)
        for key, check in validate(r).checks().items():
            if not check.holds:
                checks[f"{name}: {key} witness replays"] = _violates(r, key, check.witness)
    report(7, "oracle agreement", checks, time.perf_counter() - t0)


def _violates(r, key, witness):
    acc = lambda x, y: r.accepts(pairwise(x, y))  # noqa: E731
    if key == "reflexive":
        x, y = witness
        return x == y and not acc(x, y)
    if key == "symmetric":
        x, y = witness
        return acc(x, y) and not acc(y, x)
    if key == "transitive":
        x, y, z = witness
        return acc(x, y) and acc(y, z) and not acc(x, z)
    x, y = witness
    return len(x) > 0 and acc(x, y) and not acc(x[:-1], y[:-1])


def _least_violation(r, key, max_len=4):
    """First violation by length, then lexicographically tape by tape (middle tape last for triples)."""
    letters = r.base.symbols
    for n in range(max_len + 1):
        ws = [tuple(w) for w in product(letters, repeat=n)]
        if key == "reflexive":
            candidates = ((w, w) for w in ws)
        elif key == "transitive":
            candidates = ((x, y, z) for x in ws for z in ws for y in ws)
        else:
            candidates = ((x, y) for x in ws for y in ws)
        for c in candidates:
            if _violates(r, key, c):
                return c
    return None


def test_validation_negatives(report):
    t0 = time.perf_counter()
    checks = {}
    expected = {"fig1b_no_reflexive": "reflexive", "fig1b_no_transitive": "transitive",
                "fig1b_no_recall": "perfect-recall"}
    for name in examples.MUTATIONS:
        r = examples.relation(name)
        rep = validate(r)
        checks[f"{name}: rejected on {expected[name]}"] = not rep.checks()[expected[name]].holds
        for key in rep.failures():
            checks[f"{name}: {key} witness minimal"] = rep.checks()[key].witness == _least_violation(r, key)
        code, _, _ = run_cli("validate", path(f"{name}.rel"))
        checks[f"{name}: exit 1"] = code == 1
    code, _, _ = run_cli("validate", path("fig1b.rel"))
    checks["fig1b: exit 0"] = code == 0
    report(8, "validation negatives", checks, time.perf_counter() - t0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
