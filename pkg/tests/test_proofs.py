import itertools

import pytest
from hypothesis import given, settings

from proofspace.complex import are_isomorphic
from proofspace.homology import homology_groups
from proofspace.proofs import (ProofSearch, SearchLimitError, count_proofs, denotation, enumerate_proofs,
                               from_sexp, proofs_space, witness_check)
from proofspace.semantics import (PLUS, Bool, Bottom, One, Par, Plus, Tensor, With, bool_point, bool_with,
                                  gustave, gustave_points, interpret, parse_formula)

from conftest import additive_formulas, cross_polytope, formulas


def additive_count(A):
    # [DERIVED] a one-formula sequent of + and & only admits one rule at the root
    if A.is_unit:
        return 1
    a, b = additive_count(A.left), additive_count(A.right)
    return a + b if A.op == PLUS else a * b


@given(additive_formulas(max_leaves=7))
def test_additive_counts(A):
    assert count_proofs([A]) == additive_count(A)


@pytest.mark.parametrize("text, plain, mix", [
    ("1", 1, 1),
    ("bot", 0, 0),
    ("1 + 1", 2, 2),
    ("1 & 1", 1, 1),
    ("1 * 1", 1, 1),
    ("1 | 1", 0, 1),
    ("bot | 1", 1, 1),
    ("bot * 1", 0, 0),
    ("(1 | 1) * 1", 0, 1),
])
def test_small_counts(text, plain, mix):
    A = parse_formula(text)
    assert count_proofs([A]) == plain
    assert count_proofs([A], mix=True) == mix


@given(formulas(max_leaves=5))
@settings(max_examples=60)
def test_denotations_are_cliques_and_trees_check(A):
    search = ProofSearch(mix=True)
    entry = search.entry((A,))
    S = interpret(A)
    for den, tree in entry.by_denotation.items():
        assert denotation(tree) == den
        pts = {t[0] for t in den}
        assert S.is_clique(pts)
        assert from_sexp(tree.to_sexp(), (A,), mix=True) == tree
    if entry.count <= 200:
        trees = search.all_trees((A,))
        assert len(trees) == entry.count
        assert {denotation(t) for t in trees} == set(entry.by_denotation)


@given(formulas(max_leaves=5))
@settings(max_examples=60)
def test_mix_only_adds_proofs(A):
    assert count_proofs([A], mix=True) >= count_proofs([A])


def test_bool3_proofs():
    ps = proofs_space(bool_with(3))
    assert ps.raw_count == 8 and len(ps.proofs) == 8
    want = {frozenset({bool_point(3, 1, i), bool_point(3, 2, j), bool_point(3, 3, m)})
            for i, j, m in itertools.product((1, 2), repeat=3)}
    assert set(ps.denotations) == want
    assert not ps.unwitnessed
    assert are_isomorphic(ps.complex, cross_polytope(3)) is not None


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_bool_with_k_gives_spheres(k):
    ps = proofs_space(bool_with(k))
    assert len(ps.proofs) == 2 ** k
    groups = [str(g) for g in homology_groups(ps.complex)]
    want = ["Z^2"] if k == 1 else ["Z"] + ["0"] * (k - 2) + ["Z"]
    assert groups == want


def test_proof_sexp_shape():
    (p,) = enumerate_proofs([With(One, Plus(One, One))], dedup_by_denotation=False)[:1]
    assert p.to_sexp() == "(with 0 (one) (plusl 0 (one)))"
    t = enumerate_proofs([Tensor(One, Par(Bottom, One))])
    assert [x.to_sexp() for x in t] == ["(tensor 0 () (one) (par 0 (bot 0 (one))))"]


def test_from_sexp_rejects_bad_steps():
    A = Plus(One, One)
    with pytest.raises(ValueError):
        from_sexp("(with 0 (one) (one))", (A,))
    with pytest.raises(ValueError):
        from_sexp("(plusl 0 (one)", (A,))
    with pytest.raises(ValueError):
        from_sexp("plusl", (A,))


def test_enumerate_raw_vs_dedup():
    A = Par(Plus(One, One), Bottom)
    raw = enumerate_proofs([A], dedup_by_denotation=False)
    dedup = enumerate_proofs([A])
    # the two rules commute, so each denotation has two derivation orders
    assert len(raw) == count_proofs([A]) == 4
    assert len(dedup) == 2


def test_gustave_provable_variant_misses_triangle():
    tri = gustave_points()
    G = gustave("bottom_units")
    ps = proofs_space(G)
    assert ps.raw_count > 0
    # exhaustive: by_denotation holds every distinct denotation
    assert witness_check(ps, tri) is None
    assert all(witness_check(ps, e) is not None for e in itertools.combinations(tri, 2))
    assert not ps.complex.is_simplex(tri)


def test_literal_gustave_needs_mix():
    G = gustave("literal")
    assert count_proofs([G]) == 0
    ps = proofs_space(G, mix=True)
    assert ps.raw_count > 0 and not ps.unwitnessed
    assert witness_check(ps, gustave_points()) is None


def test_search_guards():
    big = Bool
    for _ in range(25):
        big = Par(big, Bool)
    with pytest.raises(SearchLimitError):
        count_proofs([big])
    with pytest.raises(SearchLimitError):
        ProofSearch(max_sequents=3).entry((bool_with(3),))
    with pytest.raises(SearchLimitError):
        ProofSearch().all_trees((bool_with(3),), limit=2)
