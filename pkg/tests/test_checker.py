from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centralizer_lab.centralisers import cdim, centre
from centralizer_lab.checker import (
    admits,
    admits_by_evaluation,
    check,
    check_axiom,
    commuting_graph,
    evaluate,
    quantifier_block,
    truth_domain,
)
from centralizer_lab.errors import BudgetExceeded, UnboundVariable
from centralizer_lab.formulas import (
    And,
    Atom,
    Exists,
    Forall,
    GraphSpec,
    Implies,
    Not,
    Or,
    csa_axiom,
    ct_axiom,
    cycle_graph,
    expand,
    graph_formula_open,
    graph_sentence,
    named_axiom,
    path_graph,
    us_axiom,
)
from centralizer_lab.standard import cyclic, dicyclic, dihedral, elementary_abelian, symmetric
from centralizer_lab.syntax import parse

from conftest import ALL_NAMES, CATALOG, group

UP_TO_16 = [n for n in ALL_NAMES if CATALOG.entry(n).order <= 16]
UP_TO_10 = [n for n in ALL_NAMES if CATALOG.entry(n).order <= 10]


# an evaluator straight from the definitions, over the core language only


def naive(G, f, env):
    if isinstance(f, Atom):
        x = 0
        for name, e in f.term.factors:
            g = env[name]
            x = G.mul[x][g if e == 1 else G.inv[g]]
        return x == 0
    if isinstance(f, Not):
        return not naive(G, f.body, env)
    if isinstance(f, And):
        return all(naive(G, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(naive(G, p, env) for p in f.parts)
    if isinstance(f, Implies):
        return not naive(G, f.premise, env) or naive(G, f.conclusion, env)
    results = (naive(G, f.body, {**env, f.var: g}) for g in range(G.order))
    return all(results) if isinstance(f, Forall) else any(results)


# eval


def test_trivial_sentence():
    assert evaluate(symmetric(3), parse("1 = 1"))


def test_abelian_groups_are_ct():
    assert evaluate(elementary_abelian(2, 2), ct_axiom())


def test_s3_fails_csa_with_a_counterexample():
    S3 = symmetric(3)
    report = check(S3, csa_axiom())
    assert not report.verdict and report.kind == "counterexample"
    w = report.witness
    x, y, t = w["x"], w["y"], w["t"]
    # x^t lands back in C(y) while t does not
    xt = S3.mul[S3.mul[S3.inv[t]][x]][t]
    assert x != 0 and S3.mul[x][y] == S3.mul[y][x] and S3.mul[xt][y] == S3.mul[y][xt]
    assert S3.mul[t][y] != S3.mul[y][t]
    assert not naive(S3, expand(parse("x != 1 & x in C(y) & x^t in C(y) -> t in C(y)")), w)


def test_unbound_variables_are_reported():
    with pytest.raises(UnboundVariable) as info:
        evaluate(cyclic(3), parse("x = y"), {"x": 1})
    assert info.value.name == "y"
    assert evaluate(cyclic(3), parse("x = y"), {"x": 1, "y": 1})


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        evaluate(symmetric(4), named_axiom("CD(4)"), budget=500)


def test_check_report_json():
    report = check(dihedral(8), ct_axiom())
    data = json.loads(report.to_json())
    assert set(data) >= {"verdict", "witness", "nodes", "millis"}
    assert data["verdict"] is False
    assert set(data["witness"].values()) <= set(dihedral(8).element_names)


@pytest.mark.parametrize("name", UP_TO_16)
@pytest.mark.parametrize("axiom", ["CT", "CSA", "US", "COMM", "CD(2)", "PATH(2)", "CYC(3)"])
def test_sugar_and_expansion_agree(name, axiom):
    G = group(name)
    f = named_axiom(axiom)
    assert evaluate(G, f) == evaluate(G, expand(f))


@pytest.mark.parametrize("name", ["C1", "C3", "C2xC2", "D6", "D8", "Q8"])
@pytest.mark.parametrize("axiom", ["CT", "CSA", "US", "CD(2)", "PATH(1)", "PATH(2)", "CYC(3)"])
def test_checker_agrees_with_naive_evaluation(name, axiom):
    G = group(name)
    f = named_axiom(axiom)
    assert evaluate(G, f) == naive(G, expand(f), {})


_atoms = st.sampled_from([
    "x = 1", "y = 1", "x = y", "[x,y] = 1", "x in C(y)", "y in C(x)", "x in Z", "y in Z",
    "x*y = y*x*x", "x^y = x", "x^-1*y^-1*x*y = y", "x*x = 1", "x*x*x = 1",
])


@st.composite
def sentences(draw, depth=4):
    if depth == 0 or draw(st.integers(0, 2)) == 0:
        text = draw(_atoms)
    else:
        kind = draw(st.sampled_from(["not", "and", "or", "impl"]))
        a = draw(sentences(depth - 1))
        if kind == "not":
            text = f"!({a})"
        else:
            b = draw(sentences(depth - 1))
            text = f"({a}) {'&' if kind == 'and' else '|' if kind == 'or' else '->'} ({b})"
    return text


@settings(max_examples=200)
@given(
    st.sampled_from(["S3", "D8", "Q8", "C4", "Dic12", "A4"]),
    st.sampled_from(["forall x, y", "exists x, y", "forall x exists y", "exists x forall y", "forall y, x", "exists y forall x"]),
    sentences(),
)
def test_random_sentences_match_naive_evaluation(name, prefix, body):
    G = group(name)
    f = parse(f"{prefix} ({body})")
    report = check(G, f)
    assert report.verdict == naive(G, expand(f), {})
    if report.witness is not None:
        names, matrix = quantifier_block(f)
        # witness re-verifies and is the lexicographically least one
        outcome = naive(G, expand(matrix), report.witness)
        assert outcome == isinstance(f, Exists)
        for values in itertools.product(range(G.order), repeat=len(names)):
            env = dict(zip(names, values))
            if naive(G, expand(matrix), env) == isinstance(f, Exists):
                assert env == report.witness
                break


# truth domains


def test_truth_domain_of_centre():
    D8 = dihedral(8)
    assert list(truth_domain(D8, parse("x in Z"))) == [(g,) for g in centre(D8)]


def test_truth_domain_of_commutation_in_abelian_group():
    G = cyclic(5)
    assert list(truth_domain(G, parse("[x,y] = 1"))) == list(itertools.product(range(5), repeat=2))


def test_truth_domain_of_path1_in_c2_is_empty():
    assert list(truth_domain(cyclic(2), graph_formula_open(path_graph(1)))) == []


def test_truth_domain_budget_and_order():
    G = group("S4")
    with pytest.raises(BudgetExceeded):
        truth_domain(G, parse("x*y*z = 1"), budget=1000)
    rows = list(truth_domain(G, parse("x*y = y*x & x != y")))
    assert rows == sorted(rows)
    assert all(G.mul[a][b] == G.mul[b][a] and a != b for a, b in rows)


# commuting graph


def test_commuting_graph_of_abelian_group_is_complete():
    g = commuting_graph(cyclic(6))
    assert len(g.vertices) == 5 and len(g.edges) == 10


def test_commuting_graph_of_s3():
    S3 = symmetric(3)
    g = commuting_graph(S3)
    edges = {tuple(sorted(S3.element_names[int(v)] for v in e)) for e in g.edges}
    assert edges == {("(0,1,2)", "(0,2,1)")}


def test_commuting_graph_of_q8():
    Q = dicyclic(8)
    g = commuting_graph(Q)
    minus_one = Q.element("a^2")
    neighbours = {Q.element_names[int(v)] for v in g.vertices if g.adjacent(str(minus_one), v)}
    assert len(neighbours) == 6
    for name in ["a", "x", "ax"]:
        a = Q.element(name)
        na = Q.mul[a][minus_one]
        own = {int(v) for v in g.vertices if g.adjacent(str(a), v)}
        assert own == {minus_one, na}


# admits


def test_admits_examples():
    assert admits(dihedral(8), cycle_graph(4)) is None
    assert admits(symmetric(3), cycle_graph(3)) is None
    impl = admits(elementary_abelian(2, 2), cycle_graph(3))
    assert impl is not None and sorted(impl.elements) == [1, 2, 3]


def test_admits_uses_induced_embedding():
    # a triangle is a subgraph of K4 but a path of length 2 is not induced in an abelian group
    assert admits(cyclic(8), path_graph(2)) is None
    assert admits(cyclic(8), cycle_graph(3)) is not None


@pytest.mark.parametrize("name", UP_TO_16)
def test_admits_agrees_with_sentence_evaluation(name):
    G = group(name)
    graphs = [path_graph(l) for l in range(1, 5)] + [cycle_graph(l) for l in range(3, 6)]
    graphs.append(GraphSpec.from_edges(["a", "b", "c"], [("a", "b")]))
    for g in graphs:
        impl = admits(G, g)
        assert (impl is not None) == admits_by_evaluation(G, g)
        if impl is not None:
            assert evaluate(G, graph_formula_open(g), impl.assignment())


# axiom cross-checks


def test_check_axiom_examples():
    assert check_axiom(symmetric(3), "CT").verdict
    report = check_axiom(dihedral(8), "CT")
    assert not report.verdict and report.witness is not None
    S4 = symmetric(4)
    assert not check_axiom(S4, "CD(2)").verdict
    assert not check_axiom(S4, "CD(3)").verdict
    assert check_axiom(S4, "CD(4)").verdict


@pytest.mark.parametrize("name", UP_TO_10)
def test_cd_axiom_matches_cdim_small(name):
    G = group(name)
    for m in range(4):
        assert evaluate(G, named_axiom(f"CD({m})")) == (cdim(G) <= m)


@pytest.mark.parametrize("name", ["D16", "Q16", "S4", "SL2_3", "A4", "D12", "Heis3"])
def test_cd_axiom_matches_cdim_larger(name):
    G = group(name)
    for m in range(cdim(G) + 2):
        assert check_axiom(G, f"CD({m})").verdict == (cdim(G) <= m)


@pytest.mark.parametrize("name", UP_TO_16)
def test_path2_is_the_negation_of_ct(name):
    G = group(name)
    assert evaluate(G, graph_sentence(path_graph(2))) == (not evaluate(G, ct_axiom()))


@pytest.mark.parametrize("name", ALL_NAMES)
def test_axiom_implications(name):
    G = group(name)
    ct, csa, us = evaluate(G, ct_axiom()), evaluate(G, csa_axiom()), evaluate(G, us_axiom())
    assert not csa or ct
    assert (ct and us) == csa


@pytest.mark.parametrize("name", ALL_NAMES)
def test_path_monotonicity(name):
    G = group(name)
    verdicts = [admits(G, path_graph(l)) is not None for l in range(1, 6)]
    assert all(a or not b for a, b in zip(verdicts, verdicts[1:]))


@pytest.mark.parametrize("name", ALL_NAMES)
@pytest.mark.parametrize("axiom", ["CT", "CSA", "US", "CD(2)"])
def test_counterexamples_reverify(name, axiom):
    G = group(name)
    report = check_axiom(G, axiom)
    if report.witness is not None:
        _, matrix = quantifier_block(named_axiom(axiom))
        assert not evaluate(G, matrix, report.witness)
