import pytest

from infoquot import examples, oracle
from infoquot.automata import Alphabet, language_equivalent, minimize, pairwise
from infoquot.relation import mealy_to_relation
from infoquot.structure import classify_states
from infoquot.synthesis import (ConstraintSet, DisjointSet, InfeasibleConstraintsError, InvalidRelationError,
                                MatrixIndexState, StateMatrix, UnrepresentableError, build_closure,
                                generate_constraints, solve_constraints, successor, synthesize, transform)

from conftest import BOUNDED, relation_from_table

M = StateMatrix([["q1", "q3"], ["q4", "q2"]])
NAMES = dict(zip("xyzrstuv", [(p, c) for p in range(4) for c in "ab"]))


@pytest.fixture
def fig1b_min(fig1b):
    return minimize(fig1b)


def test_transform_worked_example(fig1b_min):
    assert transform(M, fig1b_min).entries == (
        ("q1", "q3", "⊥", "q1"),
        ("q4", "q2", "⊥", "q4"),
        ("⊥", "⊥", "q2", "⊥"),
        ("q1", "q3", "⊥", "q1"),
    )


def test_transform_single_letter():
    r = relation_from_table("a", {"s": {("a", "a"): "t"}, "t": {("a", "a"): "t"}}, "s", ["s", "t"])
    assert transform(StateMatrix([["s"]]), r).entries == (("t",),)


def test_successor_worked_examples(fig1b_min):
    assert successor(M, 2, "a", fig1b_min) == MatrixIndexState(StateMatrix([["q2"]]), 1)
    assert successor(M, 2, "b", fig1b_min) == MatrixIndexState(M, 1)


def test_closure_fig1b(fig1b_min):
    c = build_closure(fig1b_min)
    assert list(c.states) == [MatrixIndexState(StateMatrix([["q1"]]), 1), MatrixIndexState(M, 1),
                              MatrixIndexState(M, 2), MatrixIndexState(StateMatrix([["q2"]]), 1)]
    assert c.max_dimension() == 2 and c.branching_bound() == 2


def test_closure_perfect_information():
    c = build_closure(minimize(examples.relation("perfect")))
    assert len(c) == 1 and c.max_dimension() == 1


def test_closure_fig3_matches_oracle():
    m = minimize(examples.relation("fig3_k3"))
    c = build_closure(m)
    deepest = oracle.brute_matrix(m, "aa")
    assert c.max_dimension() == deepest.matrix.dim == 4
    assert c.branching_bound() == 8


def test_closure_budget(fig1b_min):
    from infoquot.automata import ResourceLimitError
    with pytest.raises(ResourceLimitError):
        build_closure(fig1b_min, max_states=2)


@pytest.mark.parametrize("name", BOUNDED)
def test_matrices_well_formed(name):
    m = minimize(examples.relation(name))
    cls = classify_states(m)
    for s in build_closure(m).states:
        mat = s.matrix
        for i in range(mat.dim):
            for j in range(mat.dim):
                assert (mat[i, j] in cls.reflexive) == (i == j)
        assert len({mat.column(j) for j in range(mat.dim)}) == mat.dim


def classes_and_diseqs(phi):
    ds = DisjointSet(phi.variables)
    for u, v in phi.equalities:
        ds.union(u, v)
    groups = {}
    for var in phi.variables:
        groups.setdefault(ds.find(var), set()).add(var)
    classes = {frozenset(g) for g in groups.values()}
    diseq = {frozenset({frozenset(groups[ds.find(u)]), frozenset(groups[ds.find(v)])})
             for u, v in phi.disequalities}
    return classes, diseq


def test_constraints_worked_example(fig1b_min):
    phi = generate_constraints(build_closure(fig1b_min))
    classes, diseq = classes_and_diseqs(phi)
    named = {frozenset(k for k, v in NAMES.items() if v in cls) for cls in classes}
    assert named == {frozenset("xy"), frozenset("zrt"), frozenset("s"), frozenset("u"), frozenset("v")}
    zrt, s, u, v = (frozenset(NAMES[n] for n in group) for group in ("zrt", "s", "u", "v"))
    assert diseq == {frozenset({zrt, s}), frozenset({u, v})}


def test_constraint_witnesses_replay(fig1b_min):
    c = build_closure(fig1b_min)
    phi = generate_constraints(c)
    for (kind, u, v), (x, y) in phi.witnesses.items():
        assert {(c.run(x[:-1]), x[-1]), (c.run(y[:-1]), y[-1])} == {u, v}
        assert fig1b_min.accepts(pairwise(x, y)) == (kind == "=")
    assert phi.witnesses[("=",) + tuple(sorted([NAMES["x"], NAMES["y"]]))] == (("a",), ("b",))


def test_constraints_perfect_information():
    phi = generate_constraints(build_closure(minimize(examples.relation("perfect"))))
    assert phi.nontrivial_equalities() == frozenset()
    assert all(u[0] == v[0] and u[1] != v[1] for u, v in phi.disequalities)


def test_solver_empty_constraints():
    phi = ConstraintSet(((0, "a"), (0, "b")), frozenset(), frozenset())
    assert solve_constraints(phi) == {(0, "a"): 1, (0, "b"): 1}
    ds = DisjointSet(phi.variables)
    assert ds.find((0, "a")) != ds.find((0, "b"))


def test_solver_infeasible_chain():
    x, y, z = (0, "a"), (0, "b"), (1, "a")
    phi = ConstraintSet((x, y, z), frozenset({(x, y), (y, z)}), frozenset({(x, z)}))
    with pytest.raises(InfeasibleConstraintsError) as err:
        solve_constraints(phi)
    assert err.value.chain == [x, y, z]


def test_constraint_set_rejects_clash():
    x, y = (0, "a"), (0, "b")
    with pytest.raises(InfeasibleConstraintsError):
        ConstraintSet((x, y), frozenset({(x, y)}), frozenset({(x, y)}))


def test_worked_solution_machine(fig1b):
    s = synthesize(fig1b)
    named = {k: s.assignment[v] for k, v in NAMES.items()}
    assert named == {"x": 1, "y": 1, "z": 1, "r": 1, "t": 1, "u": 1, "s": 2, "v": 2}
    m = s.machine
    assert len(m.states) == 4 and len(m.outputs) == 2
    loops = {q for q in m.states for c in m.alphabet if m.delta[(q, c)] == q}
    assert len(loops) == 2


@pytest.mark.parametrize("name", BOUNDED)
def test_solver_sound(name):
    s = synthesize(examples.relation(name))
    for u, v in s.constraints.equalities:
        assert s.assignment[u] == s.assignment[v]
    for u, v in s.constraints.disequalities:
        assert s.assignment[u] != s.assignment[v]


@pytest.mark.parametrize("name", BOUNDED)
def test_round_trip(name):
    r = examples.relation(name)
    m = synthesize(r).machine
    assert language_equivalent(mealy_to_relation(m), minimize(r))
    assert oracle.kernel_equal(m, r, 6) == (True, None)


@pytest.mark.parametrize("name", BOUNDED)
def test_closure_agrees_with_oracle(name):
    m = minimize(examples.relation(name))
    c = build_closure(m)
    for n in range(6):
        for w in oracle.histories(m.base.symbols, n):
            assert c.states[c.run(w)] == oracle.brute_matrix(m, w)


def test_embargo_alphabet_size():
    assert len(synthesize(examples.relation("fig3_k3")).machine.outputs) >= 8


def test_fig2_refused(fig2):
    with pytest.raises(UnrepresentableError) as err:
        synthesize(fig2)
    assert err.value.verdict.witness.word


def test_invalid_refused():
    with pytest.raises(InvalidRelationError) as err:
        synthesize(examples.relation("fig1b_no_transitive"))
    assert "transitive" in err.value.report.failures()


def test_idempotent_representation(fig1a):
    r = mealy_to_relation(fig1a)
    assert language_equivalent(mealy_to_relation(synthesize(r).machine), r)


def test_integer_observations():
    m = synthesize(examples.relation("fig1b")).machine
    assert m.outputs == Alphabet((1, 2))
