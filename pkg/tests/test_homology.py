import itertools
import json
from collections import Counter

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from proofspace import _kernels
from proofspace.complex import SimplicialMap, SizeGuardError, from_facets, standard_space
from proofspace.homology import (HomologyGroup, IntegerMatrix, boundary_matrix, chain_complex,
                                 chain_map_of_simplicial_map, check_size, homology_generators,
                                 homology_groups, homology_report, induced_homology_map, is_chain_map,
                                 pad_groups, permutation_sign, same_homology, smith_normal_form)
from proofspace.suites import minor_gcd_factors

from conftest import complexes

RP2 = from_facets(range(1, 7), [[1, 2, 4], [1, 2, 6], [1, 3, 5], [1, 3, 6], [1, 4, 5],
                                [2, 3, 4], [2, 3, 5], [2, 5, 6], [3, 4, 6], [4, 5, 6]])
TORUS = from_facets(range(7), [sorted({i, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]
                    + [sorted({i, (i + 2) % 7, (i + 3) % 7}) for i in range(7)])


def text(groups):
    return [str(g) for g in groups]


@pytest.mark.parametrize("X", [RP2, TORUS], ids=["rp2", "torus"])
def test_closed_surfaces_are_manifolds(X):
    edges = Counter(e for F in X.facets for e in itertools.combinations(F.vertices, 2))
    assert set(edges.values()) == {2}


def test_known_homology():
    # [DERIVED] standard results for these triangulations
    assert text(homology_groups(RP2)) == ["Z", "Z/2", "0"]
    assert text(homology_groups(TORUS)) == ["Z", "Z^2", "Z"]
    for n in range(5):
        want = ["Z"] + ["0"] * n
        assert text(homology_groups(standard_space("delta", n))) == want
        want = (["Z"] + ["0"] * (n - 1) + ["Z"]) if n else ["Z^2"]
        assert text(homology_groups(standard_space("sphere", n))) == want


def test_disjoint_union_and_empty():
    X = from_facets("abcde", ["ab", "bc", "ca", "de"])
    assert text(homology_groups(X)) == ["Z^2", "Z"]
    assert homology_groups(from_facets([], [])) == []


def test_homology_group_value_type():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(3, (2, 4))) == "Z^3 + Z/2 + Z/4"
    with pytest.raises(ValueError):
        HomologyGroup(0, (2, 3))
    with pytest.raises(ValueError):
        HomologyGroup(0, (1,))
    assert same_homology([HomologyGroup(1)], pad_groups([HomologyGroup(1)], 3))


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1


@given(complexes(max_vertices=7, max_facet=5))
def test_boundary_squared_is_zero(X):
    for k in range(2, X.dim + 1):
        assert (boundary_matrix(X, k - 1) @ boundary_matrix(X, k)).is_zero()


@given(complexes(max_vertices=7, max_facet=5))
def test_euler_poincare(X):
    groups = homology_groups(X)
    assert sum((-1) ** k * g.betti for k, g in enumerate(groups)) == X.euler_characteristic()


@given(complexes(max_vertices=8, max_facet=4))
def test_betti0_matches_networkx_components(X):
    G = nx.Graph()
    G.add_nodes_from(X.web)
    for F in X.facets:
        G.add_edges_from(itertools.combinations(F.vertices, 2))
    assert homology_groups(X)[0] == HomologyGroup(nx.number_connected_components(G))


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_snf_matches_minor_gcd_oracle(M):
    assert smith_normal_form(M)[0] == minor_gcd_factors(M)


@given(matrices)
def test_snf_rank_matches_numpy(M):
    # [DERIVED] rank over Q from numpy agrees with the number of factors
    factors, rank = smith_normal_form(M)
    assert rank == np.linalg.matrix_rank(np.array(M, dtype=float))
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@given(matrices)
def test_backends_agree(M):
    got = {b: _kernels.invariant_factors(_kernels.diagonal_of(M, b)) for b in ("numpy", "exact")}
    if _kernels.diagonalize_int64_nb is not None:
        got["numba"] = _kernels.invariant_factors(_kernels.diagonal_of(M, "numba"))
    assert len({tuple(v) for v in got.values()}) == 1


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_overflow_falls_back_to_exact(backend):
    if backend == "numba" and _kernels.diagonalize_int64_nb is None:
        pytest.skip("numba unavailable")
    big = 2 ** 30 + 3
    M = [[big, big - 1, 7], [big - 5, big, 11], [13, 17, big]]
    assert _kernels.diagonal_of(M, backend) and \
        _kernels.invariant_factors(_kernels.diagonal_of(M, backend)) == minor_gcd_factors(M)
    huge = [[2 ** 70, 3], [5, 2 ** 65]]
    assert _kernels.invariant_factors(_kernels.diagonal_of(huge, backend)) == minor_gcd_factors(huge)


def test_integer_matrix_ops():
    A = IntegerMatrix.from_dense([[1, 2], [0, 3]])
    B = IntegerMatrix.identity(2)
    assert A @ B == A
    assert (A - A).is_zero()
    assert A.column(1) == {0: 2, 1: 3}
    with pytest.raises(ValueError):
        A @ IntegerMatrix(3, 1)
    with pytest.raises(IndexError):
        IntegerMatrix(1, 1, {(1, 0): 1})
    assert smith_normal_form(IntegerMatrix(0, 3)) == ([], 0)


def test_report_json_round_trip():
    rep = homology_report("rp2", RP2)
    assert json.loads(json.dumps(rep)) == rep
    assert rep["groups"][1] == {"k": 1, "betti": 0, "torsion": [2]}
    assert rep["size"] == {"web": 6, "facets": 10, "max_facet": 3}


def test_size_guard():
    with pytest.raises(SizeGuardError):
        check_size(standard_space("delta", 20))
    with pytest.raises(SizeGuardError):
        homology_groups(standard_space("delta", 4), max_simplices=10)


# ---------------------------------------------------------------- chain maps

def hexagon_to_triangle():
    X = standard_space("sphere", 1).relabel({0: "a", 1: "b", 2: "c"})
    H = from_facets(range(6), [[i, (i + 1) % 6] for i in range(6)])
    return SimplicialMap(H, X, {i: "abc"[i % 3] for i in range(6)})


def test_chain_map_of_simplicial_map():
    f = hexagon_to_triangle()
    C, D = chain_complex(f.source), chain_complex(f.target)
    phi = chain_map_of_simplicial_map(f, f.source, f.target)
    assert is_chain_map(phi, C, D).ok
    # [DERIVED] wrapping the hexagon twice around the triangle has degree 2
    assert induced_homology_map(phi, 1) == [[2]]
    assert induced_homology_map(phi, 0) == [[1]]


def test_rotation_and_reflection_degrees():
    X = standard_space("sphere", 1)
    rot = SimplicialMap(X, X, {0: 1, 1: 2, 2: 0})
    ref = SimplicialMap(X, X, {0: 1, 1: 0, 2: 2})
    for f, deg in ((rot, 1), (ref, -1)):
        phi = chain_map_of_simplicial_map(f, X, X)
        assert induced_homology_map(phi, 1) == [[deg]]


def test_collapsing_map_kills_degenerate_simplices():
    X = standard_space("sphere", 1)
    Y = standard_space("delta", 1)
    f = SimplicialMap(X, Y, {0: 0, 1: 1, 2: 1})
    phi = chain_map_of_simplicial_map(f, X, Y)
    assert is_chain_map(phi, chain_complex(X), chain_complex(Y)).ok
    assert induced_homology_map(phi, 1) == []


def test_torsion_generator_of_rp2():
    gens = homology_generators(chain_complex(RP2), 1)
    assert [order for _, order in gens] == [2]
    cycle = gens[0][0]
    d1 = boundary_matrix(RP2, 1)
    assert all(sum(d1[i, j] * c for j, c in enumerate(cycle)) == 0 for i in range(d1.rows))


@given(complexes(max_vertices=6, max_facet=4), st.data())
def test_simplicial_maps_give_chain_maps(X, data):
    Y = data.draw(complexes(max_vertices=4, max_facet=4))
    ys = list(Y.vertices)
    mapping = {v: data.draw(st.sampled_from(ys)) for v in X.vertices}
    f = SimplicialMap(X, Y, mapping, check=False)
    if f.violation() is not None:
        return
    phi = chain_map_of_simplicial_map(f, X, Y)
    assert is_chain_map(phi, chain_complex(X), chain_complex(Y)).ok
    # identity induces identity in every degree
    ident = chain_map_of_simplicial_map(SimplicialMap.identity(X), X, X)
    for k, g in enumerate(homology_groups(X)):
        n = g.betti + len(g.torsion)
        M = induced_homology_map(ident, k)
        assert M == [[int(i == j) for j in range(n)] for i in range(n)]
