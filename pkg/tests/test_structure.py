import pytest

from infoquot import examples, oracle
from infoquot.automata import minimize, pairwise
from infoquot.structure import (ConsistencyError, classify_states, decide_bounded_branching, decision_automaton,
                                interchangeable, lex_order_dfa, representation_relation, representatives_dfa)

from conftest import BOUNDED, words

VALID = BOUNDED + ("fig2",)


def classified(name):
    m = minimize(examples.relation(name))
    return m, classify_states(m)


def same_against_all(r, x, y):
    return all(r.run(pairwise(x, p)) == r.run(pairwise(y, p)) for p in words(r.base.symbols, len(x)))


def test_classify_fig1b():
    _, cls = classified("fig1b")
    assert cls.reflexive == {"q1", "q2"}
    assert cls.ambiguous == {"q3", "q4", "⊥"}


def test_classify_fig2():
    _, cls = classified("fig2")
    assert cls.reflexive == {"q1", "q2"}
    assert cls.ambiguous == {"q3", "⊥"}


def test_classify_perfect_information():
    _, cls = classified("perfect")
    assert cls.reflexive == {"q"} and cls.ambiguous == {"⊥"}


@pytest.mark.parametrize("name", VALID)
def test_classification_partitions_states(name):
    m, cls = classified(name)
    assert cls.reflexive | cls.ambiguous == set(m.states)
    assert not cls.reflexive & cls.ambiguous
    assert m.initial in cls.reflexive


def test_partition_violation_is_loud():
    m = minimize(examples.relation("fig1b_no_reflexive"))
    with pytest.raises(ConsistencyError):
        classify_states(m)


def test_interchangeable_fig1b():
    m, cls = classified("fig1b")
    assert interchangeable(m, cls, "aa", "bb")
    assert not interchangeable(m, cls, "ab", "aa")
    assert interchangeable(m, cls, "ba", "ba")


@pytest.mark.parametrize("name", VALID)
def test_interchangeable_matches_definition(name):
    m, cls = classified(name)
    depth = 3 if len(m.base) > 2 else 4
    for n in range(depth + 1):
        ws = words(m.base.symbols, n)
        for x in ws:
            for y in ws:
                fast = interchangeable(m, cls, x, y)
                assert fast == same_against_all(m, x, y)
                if fast:
                    assert m.accepts(pairwise(x, y))


def test_lex_order_examples():
    strict = lex_order_dfa(examples.relation("fig1b").base, strict=True)
    weak = lex_order_dfa(examples.relation("fig1b").base)
    assert strict.accepts(pairwise("ab", "bb"))
    assert weak.accepts(pairwise("ab", "ab")) and not strict.accepts(pairwise("ab", "ab"))
    assert len(strict.states) == 3


def test_lex_order_exhaustive():
    base = examples.relation("fig1b").base
    strict, weak = lex_order_dfa(base, strict=True), lex_order_dfa(base)
    for n in range(6):
        for x in words("ab", n):
            for y in words("ab", n):
                assert strict.accepts(pairwise(x, y)) == (x < y)
                assert weak.accepts(pairwise(x, y)) == (x <= y)


def test_representatives_fig1b():
    m, cls = classified("fig1b")
    reps = representatives_dfa(m, cls)
    assert reps.accepts("") and reps.accepts("aa") and reps.accepts("ab") and reps.accepts("ba")
    assert not reps.accepts("bb")


@pytest.mark.parametrize("name", BOUNDED + ("fig2",))
def test_representatives_match_brute_force(name):
    m, cls = classified(name)
    reps = representatives_dfa(m, cls)
    depth = 3 if len(m.base) > 2 else 5
    key = m.base.key
    for n in range(depth + 1):
        ws = words(m.base.symbols, n)
        for x in ws:
            least = all(not same_against_all(m, x, y) for y in ws if key(y) < key(x))
            assert reps.accepts(x) == least, x


def test_representation_relation_fig1b():
    m, cls = classified("fig1b")
    rel = representation_relation(m, cls)
    assert rel.accepts(pairwise("bb", "aa")) and rel.accepts(pairwise("bb", "ab"))
    assert not rel.accepts(pairwise("bb", "bb"))
    assert rel.accepts(())


@pytest.mark.parametrize("name", VALID)
def test_runs_count_representatives(name):
    m, cls = classified(name)
    n_auto = decision_automaton(m, cls)
    depth = 3 if len(m.base) > 2 else 4
    for n in range(depth + 1):
        for x in words(m.base.symbols, n):
            runs = n_auto.accepting_runs(x)
            assert len(runs) == oracle.brute_matrix(m, x).matrix.dim
            assert len({deco for _, deco in runs}) == len(runs)


def test_fig1b_bounded():
    v = decide_bounded_branching(examples.relation("fig1b"))
    assert v.bounded and v.kind == "Bounded" and v.bound == 2 and v.max_clique == 2


def test_fig3_bounded():
    v = decide_bounded_branching(examples.relation("fig3_k3"))
    assert v.bounded and v.bound == 8 and v.max_clique == 4


def test_fig2_unbounded_witness_replays():
    r = examples.relation("fig2")
    v = decide_bounded_branching(r)
    assert not v.bounded and v.kind == "Unbounded"
    w = v.witness
    assert w.word and w.p != w.q
    m = minimize(r)
    assert w.replays(decision_automaton(m, classify_states(m)))


def test_pumping_grows_representative_counts():
    r = examples.relation("fig2")
    w = decide_bounded_branching(r).witness
    m = minimize(r)
    counts = [oracle.brute_matrix(m, w.prefix + w.word * n + w.suffix).matrix.dim for n in (1, 2, 3)]
    assert counts[0] < counts[1] < counts[2]


def test_blind_and_perfect_bounded():
    assert decide_bounded_branching(examples.relation("blind")).bound == 1
    assert decide_bounded_branching(examples.relation("perfect")).bound == 2
