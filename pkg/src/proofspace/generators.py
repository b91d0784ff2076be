"""Random and exhaustive small complexes and relations for property checks."""
from __future__ import annotations

import itertools

import numpy as np

from .complex import Complex, SimplicialMap, from_facets
from .relations import SimplicialRelation, is_simplicial_relation


def random_complex(rng: np.random.Generator, n_vertices: int, n_facets: int | None = None,
                   max_size: int = 4, prefix: str = "") -> Complex:
    """Random complex on ``n_vertices`` named vertices.

    Vertices are ``0..n-1`` or ``prefix + str(i)`` when a prefix is given.
    """
    names = [f"{prefix}{i}" for i in range(n_vertices)] if prefix else list(range(n_vertices))
    if n_facets is None:
        n_facets = int(rng.integers(1, n_vertices + 2))
    gens = []
    for _ in range(n_facets):
        size = int(rng.integers(1, min(max_size, n_vertices) + 1))
        pick = rng.choice(n_vertices, size=size, replace=False)
        gens.append([names[i] for i in pick])
    return from_facets(names, gens)


def random_simplicial_relation(rng: np.random.Generator, X: Complex, Y: Complex,
                               tries: int = 40) -> SimplicialRelation:
    """Random simplicial relation, by rejection with a constructive fallback.

    Rejection draws one or two targets per source vertex.  The fallback
    sends every source vertex into one random facet of Y, which is always
    simplicial.
    """
    ys = list(Y.vertices)
    for _ in range(tries):
        pairs = set()
        for a in X.vertices:
            k = int(rng.integers(1, min(2, len(ys)) + 1))
            for j in rng.choice(len(ys), size=k, replace=False):
                pairs.add((a, ys[j]))
        if is_simplicial_relation(pairs, X, Y)[0]:
            return SimplicialRelation(X, Y, pairs, check=False)
    G = list(Y.facets[int(rng.integers(len(Y.facets)))])
    pairs = set()
    for a in X.vertices:
        k = int(rng.integers(1, len(G) + 1))
        for j in rng.choice(len(G), size=k, replace=False):
            pairs.add((a, G[j]))
    return SimplicialRelation(X, Y, pairs)


def random_simplicial_map(rng: np.random.Generator, X: Complex, Y: Complex,
                          tries: int = 40) -> SimplicialMap:
    """Random simplicial map; falls back to a map into one facet of Y."""
    ys = list(Y.vertices)
    for _ in range(tries):
        f = SimplicialMap(X, Y, {a: ys[int(rng.integers(len(ys)))] for a in X.vertices}, check=False)
        if f.violation() is None:
            return f
    G = list(Y.facets[int(rng.integers(len(Y.facets)))])
    return SimplicialMap(X, Y, {a: G[int(rng.integers(len(G)))] for a in X.vertices})


def random_integer_matrix(rng: np.random.Generator, max_dim: int = 5, bound: int = 6) -> list[list[int]]:
    rows = int(rng.integers(1, max_dim + 1))
    cols = int(rng.integers(1, max_dim + 1))
    return rng.integers(-bound, bound + 1, size=(rows, cols)).tolist()


def all_complexes(n: int) -> list[Complex]:
    """Every complex whose web is ``{0..n-1}``, by brute force over antichains.

    Singletons are implied, so only families of subsets with two or more
    vertices are enumerated.
    """
    web = range(n)
    big = [frozenset(c) for r in range(2, n + 1) for c in itertools.combinations(web, r)]
    out = []
    for mask in range(1 << len(big)):
        fam = [s for i, s in enumerate(big) if mask >> i & 1]
        if any(a < b for a in fam for b in fam):
            continue
        out.append(from_facets(web, fam))
    return out


def all_small_complexes(max_web: int = 4) -> list[Complex]:
    """All complexes with web ``{0..n-1}`` for 1 <= n <= max_web."""
    return [X for n in range(1, max_web + 1) for X in all_complexes(n)]
