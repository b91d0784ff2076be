import itertools

import networkx as nx
import pytest
from hypothesis import given

from proofspace.complex import Simplex, are_isomorphic, from_facets, standard_space
from proofspace.homology import homology_groups
from proofspace.semantics import (BOT, ONE, PAR, PLUS, TENSOR, WITH, Bool, Bottom, Formula, One, ParseError,
                                  Par, Plus, STAR, Tensor, With, bool_label, bool_point, bool_with, gustave,
                                  gustave_label, gustave_points, inl, inr, interpret, is_flag, maximal_cliques,
                                  pair, parse_formula, space_complex, with_power)

from conftest import cross_polytope, formulas

DUAL = {ONE: BOT, BOT: ONE, PLUS: WITH, WITH: PLUS, TENSOR: PAR, PAR: TENSOR}


def dual(A: Formula) -> Formula:
    if A.is_unit:
        return Formula(DUAL[A.op])
    return Formula(DUAL[A.op], dual(A.left), dual(A.right))


def web_size(A: Formula) -> int:
    if A.is_unit:
        return 1
    a, b = web_size(A.left), web_size(A.right)
    return a + b if A.op in (PLUS, WITH) else a * b


@given(formulas())
def test_web_size(A):
    assert len(interpret(A).web) == web_size(A)
    assert len(set(interpret(A).web)) == web_size(A)


@given(formulas(max_leaves=5))
def test_negation_swaps_coherence_and_incoherence(A):
    # [DERIVED] linear negation exchanges strict coherence and strict incoherence
    S, T = interpret(A), interpret(dual(A))
    assert set(S.web) == set(T.web)
    for p, q in itertools.combinations(S.web, 2):
        assert S.coh(p, q) == T.incoh(p, q)


def test_connective_rules_on_bool():
    S = interpret(Bool)
    assert not S.coh(inl(STAR), inr(STAR))
    W = interpret(With(One, One))
    assert W.coh(inl(STAR), inr(STAR))
    T, F = inl(STAR), inr(STAR)
    BB_t, BB_p = interpret(Tensor(Bool, Bool)), interpret(Par(Bool, Bool))
    # tensor: both coordinates coherent or equal; so only equal points cohere in Bool*Bool
    assert not BB_t.coh(pair(T, T), pair(T, F))
    assert not BB_t.coh(pair(T, T), pair(F, F))
    # par: Bool has no strict coherence, so Bool|Bool is an antichain too
    assert not BB_p.coh(pair(T, T), pair(F, T))
    WW = interpret(Par(With(One, One), With(One, One)))
    assert WW.coh(pair(T, T), pair(T, F)) and WW.coh(pair(T, T), pair(F, F))
    WT = interpret(Tensor(With(One, One), With(One, One)))
    assert WT.coh(pair(T, T), pair(T, F)) and WT.coh(pair(T, T), pair(F, F))


@given(formulas(max_leaves=5))
def test_maximal_cliques_match_networkx(A):
    S = interpret(A)
    G = nx.Graph()
    G.add_nodes_from(S.web)
    G.add_edges_from(tuple(e) for e in S.strict)
    ours = set(maximal_cliques(S.neighbours()))
    theirs = {frozenset(c) for c in nx.find_cliques(G)}
    assert ours == theirs


def test_maximal_cliques_empty_graph():
    assert maximal_cliques({}) == []


@given(formulas(max_leaves=5))
def test_space_complexes_are_flag(A):
    X = space_complex(interpret(A))
    ok, witness = is_flag(X)
    assert ok and witness is None
    for F in X.facets:
        assert interpret(A).is_clique(F)


def test_is_flag_finds_minimal_non_simplex():
    ok, bad = is_flag(standard_space("sphere", 1))
    assert not ok and bad == Simplex([0, 1, 2])
    ok, bad = is_flag(standard_space("sphere", 2))
    assert not ok and bad == Simplex([0, 1, 2, 3])
    assert is_flag(from_facets(range(3), []))[0]


def test_bool_with_spaces():
    square = space_complex(interpret(bool_with(2)))
    assert are_isomorphic(square, standard_space("sphere", 1)) is None  # 4-cycle, not a triangle
    assert are_isomorphic(square, cross_polytope(2)) is not None
    octa = space_complex(interpret(bool_with(3)))
    assert are_isomorphic(octa, cross_polytope(3)) is not None
    assert [str(g) for g in homology_groups(square)] == ["Z", "Z"]
    assert [str(g) for g in homology_groups(octa)] == ["Z", "0", "Z"]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bool_points_and_labels(k):
    A = bool_with(k)
    pts = [bool_point(k, h, i) for h in range(1, k + 1) for i in (1, 2)]
    assert set(pts) == set(interpret(A).web)
    assert sorted(bool_label(k, p) for p in pts) == sorted(f"{n}{h}" for h in range(1, k + 1) for n in "TF")
    with pytest.raises(ValueError):
        bool_point(k, k + 1, 1)


def test_with_power_nests_left():
    assert with_power(One, 3) == With(With(One, One), One)
    with pytest.raises(ValueError):
        with_power(One, 0)


def test_gustave_triangle_is_a_simplex():
    for variant in ("literal", "bottom_units"):
        X = space_complex(interpret(gustave(variant)))
        tri = gustave_points()
        assert X.is_simplex(tri)
        assert [gustave_label(p) for p in tri] == ["(⊥,T,F)", "(F,⊥,T)", "(T,F,⊥)"]
    assert gustave("mixed", "1bb" * 3) == gustave("bottom_units")
    with pytest.raises(ValueError):
        gustave("mixed", "11")
    with pytest.raises(ValueError):
        gustave("nope")


@given(formulas(max_leaves=8))
def test_parse_round_trip(A):
    assert parse_formula(str(A)) == A


@pytest.mark.parametrize("text, expected", [
    ("1", One),
    ("bot", Bottom),
    ("⊥ ⊕ 1", Plus(Bottom, One)),
    ("1 & 1 & 1", With(With(One, One), One)),
    ("&3((1+1))", bool_with(3)),
    ("&2(1 + 1)", bool_with(2)),
    ("(1 * bot) | 1", Par(Tensor(One, Bottom), One)),
    ("1 ⊗ 1", Tensor(One, One)),
    ("1 ⅋ 1", Par(One, One)),
    ("<gustave:literal>", gustave("literal")),
    ("<gustave:mixed:1bb1bb1bb>", gustave("bottom_units")),
])
def test_parse_examples(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text, position", [
    ("(1+1", 4),
    ("1 + & 1", 4),
    ("1 + 1 & 1", 6),
    ("1 x", 2),
    ("", 0),
    ("&0(1)", 0),
    ("<gustave:nope>", 0),
    ("1 1", 2),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as err:
        parse_formula(text)
    assert err.value.position == position
