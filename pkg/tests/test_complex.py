import itertools
import math

import pytest
from hypothesis import given, strategies as st

from proofspace.complex import (Complex, ComplexError, Simplex, SimplicialMap, are_isomorphic,
                                down_closure_complex, format_facet_text, from_facets, parse_facet_text,
                                standard_space, vertex_key)
from proofspace.semantics import STAR, inl

from conftest import complexes


def test_simplex_basics():
    s = Simplex([2, 0, 1])
    assert s.vertices == (0, 1, 2)
    assert s.dim == 2
    assert Simplex([1, 0]) == Simplex([0, 1])
    assert len(list(s.faces())) == 7
    with pytest.raises(ComplexError):
        Simplex([])
    with pytest.raises(ComplexError):
        Simplex([1, 1])


def test_vertex_order_is_total_across_kinds():
    vs = [Simplex([0]), inl(STAR), "a", 3, STAR, Simplex([0, 1]), 0]
    ordered = sorted(vs, key=vertex_key)
    assert ordered[:3] == [0, 3, "a"]
    assert ordered[3:5] == [STAR, inl(STAR)]
    assert ordered[5:] == [Simplex([0]), Simplex([0, 1])]
    with pytest.raises(ComplexError):
        vertex_key(True)


def test_from_facets_normalises():
    X = from_facets(range(4), [[0, 1], [0, 1, 2], [1]])
    assert X.facets == (Simplex([3]), Simplex([0, 1, 2]))
    assert X.is_simplex([0, 2]) and not X.is_simplex([2, 3]) and not X.is_simplex([])
    with pytest.raises(ComplexError):
        from_facets([0], [[0, 1]])
    with pytest.raises(ComplexError):
        Complex([0, 1], [Simplex([0])])


@pytest.mark.parametrize("n", range(6))
def test_delta_f_vector(n):
    # [DERIVED] the n-simplex has C(n+1, k+1) k-faces
    assert standard_space("delta", n).f_vector() == [math.comb(n + 1, k + 1) for k in range(n + 1)]


@pytest.mark.parametrize("n", range(6))
def test_sphere_euler_characteristic(n):
    assert standard_space("sphere", n).euler_characteristic() == 1 + (-1) ** n


def test_standard_space_errors():
    with pytest.raises(ComplexError):
        standard_space("torus", 2)
    with pytest.raises(ComplexError):
        standard_space("delta", -1)


@given(complexes(), st.randoms(use_true_random=False))
def test_isomorphism_finds_relabelling(X, random):
    perm = list(X.vertices)
    random.shuffle(perm)
    mapping = {v: f"v{p}" for v, p in zip(X.vertices, perm)}
    Y = X.relabel(mapping)
    iso = are_isomorphic(X, Y)
    assert iso is not None
    assert X.relabel(iso) == Y


def test_isomorphism_rejects():
    circle = standard_space("sphere", 1)
    path = from_facets(range(3), [[0, 1], [1, 2]])
    assert are_isomorphic(circle, path) is None
    assert are_isomorphic(circle, standard_space("delta", 2)) is None


def test_down_closure():
    X = down_closure_complex([{1, 2}, {2, 3}, {2}])
    assert X.web == {1, 2, 3}
    assert set(X.facets) == {Simplex([1, 2]), Simplex([2, 3])}


def test_simplicial_map_checks():
    X = standard_space("sphere", 1)
    Y = standard_space("delta", 1)
    with pytest.raises(ComplexError):
        SimplicialMap(X, from_facets(range(3), [[0], [1], [2]]), {0: 0, 1: 1, 2: 2})
    f = SimplicialMap(X, Y, {0: 0, 1: 1, 2: 1})
    g = SimplicialMap(Y, X, {0: 2, 1: 0})
    assert f.compose(g).mapping == {0: 2, 1: 0, 2: 0}
    assert f.image([1, 2]) == Simplex([1])
    assert SimplicialMap.identity(X).compose(f) == f


@given(complexes())
def test_facet_text_round_trip(X):
    Xs = X.relabel({v: f"p{v}" for v in X.web})
    assert parse_facet_text(format_facet_text(Xs)) == Xs


@pytest.mark.parametrize("text", [
    "facet: a b\n",
    "web: a b\nweb: a\n",
    "web: a a\nfacet: a\n",
    "web: a b\nfacet: a c\n",
    "web: a\nsimplex: a\n",
    "web: a\nfacet:\n",
])
def test_facet_text_errors(text):
    with pytest.raises(ComplexError):
        parse_facet_text(text)


def test_facet_text_comments_and_singletons():
    X = parse_facet_text("# a wedge\nweb: a b c d  # four\nfacet: a b\nfacet: b c\n")
    assert set(X.facets) == {Simplex("ab"), Simplex("bc"), Simplex("d")}


@given(complexes(max_vertices=5))
def test_simplices_are_down_closed(X):
    simplices = set(X.simplices())
    for s in simplices:
        for f in s.faces():
            assert f in simplices
    assert sum(X.f_vector()) == len(simplices)
    # [DERIVED] brute force over all vertex subsets
    brute = {Simplex(c) for r in range(1, len(X.web) + 1)
             for c in itertools.combinations(X.vertices, r) if X.is_simplex(c)}
    assert brute == simplices
