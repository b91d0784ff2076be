import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from proofspace.complex import from_facets
from proofspace.semantics import Bottom, One, Par, Plus, Tensor, With

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def complexes(draw, max_vertices=6, max_facet=4, min_vertices=1):
    n = draw(st.integers(min_vertices, max_vertices))
    subsets = st.sets(st.integers(0, n - 1), min_size=1, max_size=min(max_facet, n))
    gens = draw(st.lists(subsets, min_size=0, max_size=n + 1))
    return from_facets(range(n), gens)


def formulas(max_leaves=6):
    units = st.sampled_from([One, Bottom])
    ops = st.sampled_from([Plus, With, Tensor, Par])
    return st.recursive(units, lambda kids: st.builds(lambda op, a, b: op(a, b), ops, kids, kids),
                        max_leaves=max_leaves)


def additive_formulas(max_leaves=6):
    """Formulas built from 1 with + and & only."""
    return st.recursive(st.just(One),
                        lambda kids: st.builds(lambda op, a, b: op(a, b), st.sampled_from([Plus, With]), kids, kids),
                        max_leaves=max_leaves)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def cross_polytope(n):
    """Boundary of the n-dimensional cross-polytope, vertices (i, sign)."""
    web = [(i, s) for i in range(n) for s in "+-"]
    facets = [[(i, s) for i, s in enumerate(signs)] for signs in itertools.product("+-", repeat=n)]
    return from_facets([f"{i}{s}" for i, s in web], [[f"{i}{s}" for i, s in f] for f in facets])
