"""The subset monad S on complexes and its Kleisli category.

``S X`` has the simplices of X as vertices; a family of them is a simplex
when its union is a simplex of X.  Kleisli maps ``X → S Y`` are the same thing
as simplicial relations ``X → Y``.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Mapping

from .complex import Complex, ComplexError, Simplex, SimplicialMap, SizeGuardError
from .homology import HomologyGroup, homology_groups, size_report
from .relations import SimplicialRelation, relation_image


def subset_complex(X: Complex) -> Complex:
    """``S X``: one facet per facet F of X, made of all nonempty faces of F."""
    facets = [Simplex(F.faces()) for F in X.facets]
    web = set()
    for f in facets:
        web.update(f)
    return Complex(web, facets)


def iterate_subset(X: Complex, times: int, max_facet: int = 12) -> Complex:
    """Apply S ``times`` times, refusing when a facet would exceed ``max_facet``."""
    for _ in range(times):
        if X.max_facet > max_facet:
            raise SizeGuardError(f"largest facet has {X.max_facet} vertices, above the bound {max_facet}")
        X = subset_complex(X)
    return X


def is_subset_simplex(base: Complex, family, depth: int) -> bool:
    """Whether ``family`` is a simplex of ``S^depth base`` (without building it)."""
    family = list(family)
    if not family:
        return False
    if depth == 0:
        return base.is_simplex(family)
    members = set()
    for u in family:
        if not isinstance(u, Simplex):
            return False
        members.update(u)
    return is_subset_simplex(base, members, depth - 1)


def flatten(U) -> Simplex:
    """``μ``: the union of a family of simplices."""
    out = set()
    for u in U:
        out.update(u)
    return Simplex(out)


def subset_map(f: SimplicialMap) -> SimplicialMap:
    """``S f``: direct image on simplices."""
    bad = f.violation()
    if bad is not None:
        raise ComplexError(f"not simplicial at {bad!r}")
    SX, SY = subset_complex(f.source), subset_complex(f.target)
    return SimplicialMap(SX, SY, {u: f.image(u) for u in SX.web})


def unit(X: Complex) -> SimplicialMap:
    """``ε_X: a ↦ {a}``."""
    SX = subset_complex(X)
    return SimplicialMap(X, SX, {a: Simplex([a]) for a in X.web})


def mult(X: Complex, max_facet: int = 4) -> SimplicialMap:
    """``μ_X: S S X → S X``, ``U ↦ ⋃U``; builds ``S S X`` so X must be small."""
    SX = subset_complex(X)
    SSX = iterate_subset(SX, 1, max_facet=2 ** max_facet - 1)
    return SimplicialMap(SSX, SX, {U: flatten(U) for U in SSX.web})


# ------------------------------------------------------------------ Kleisli

class KleisliMap:
    """Assignment of a simplex of ``target`` to every vertex of ``source``,
    i.e. a simplicial map ``source → S target``."""

    def __init__(self, source: Complex, target: Complex, assignment: Mapping, check: bool = True):
        self.source = source
        self.target = target
        self.assignment = {a: Simplex.of(u) for a, u in assignment.items()}
        if check:
            missing = source.web - set(self.assignment)
            if missing:
                raise ComplexError(f"assignment undefined on {sorted(map(str, missing))}")
            for F in source.facets:
                if not is_subset_simplex(target, (self.assignment[a] for a in F), 1):
                    raise ComplexError(f"image of facet {F!r} is not a simplex of S(target)")

    def __call__(self, a) -> Simplex:
        return self.assignment[a]

    def __eq__(self, other) -> bool:
        if isinstance(other, KleisliMap):
            return self.assignment == other.assignment
        return NotImplemented


def kleisli_of_relation(t: SimplicialRelation) -> KleisliMap:
    return KleisliMap(t.source, t.target, {a: t.plus(a) for a in t.source.web})


def relation_of_kleisli(g: KleisliMap) -> SimplicialRelation:
    return SimplicialRelation(g.source, g.target, {(a, b) for a, u in g.assignment.items() for b in u})


def kleisli_compose(f: KleisliMap, g: KleisliMap) -> KleisliMap:
    """``g ∘_S f = μ ∘ S g ∘ f``."""
    return KleisliMap(f.source, g.target, {a: flatten(g(b) for b in u) for a, u in f.assignment.items()})


def kleisli_identity(X: Complex) -> KleisliMap:
    return KleisliMap(X, X, {a: Simplex([a]) for a in X.web}, check=False)


def rs_functor_map(t: SimplicialRelation) -> SimplicialMap:
    """``R_S`` applied to the Kleisli map of ``t``: ``u ↦ t·u`` on ``S X``.

    Computed directly and as ``μ_Y ∘ S(t⁺)``; the two must agree.
    """
    g = kleisli_of_relation(t)
    SX, SY = subset_complex(t.source), subset_complex(t.target)
    direct = {}
    for u in SX.web:
        img = relation_image(t, u)
        family = [g(a) for a in u]  # S(t⁺)(u), a vertex of S S Y
        if not is_subset_simplex(t.target, family, 1):
            raise AssertionError(f"S(t+) sends {u!r} outside S S Y")
        if flatten(family) != img:
            raise AssertionError(f"R_S routes disagree on {u!r}")
        direct[u] = img
    return SimplicialMap(SX, SY, direct)


# ---------------------------------------------------------------- homology

def homology_of_subset_space(X: Complex, times: int = 1, max_facet: int = 12) -> tuple[list[HomologyGroup], dict]:
    """Homology of ``S^times X`` together with its size report."""
    SX = iterate_subset(X, times, max_facet)
    return homology_groups(SX), size_report(SX)


# -------------------------------------------------------------- monad laws

def _faces_families(F: Simplex) -> Iterator[Simplex]:
    """All vertices of S S X lying over the facet F of X."""
    faces = list(F.faces())
    for r in range(1, len(faces) + 1):
        for c in itertools.combinations(faces, r):
            yield Simplex(c)


def ssx_vertices(X: Complex) -> Iterator[Simplex]:
    seen = set()
    for F in X.facets:
        for U in _faces_families(F):
            if U not in seen:
                seen.add(U)
                yield U


def monad_law_report(X: Complex, rng=None, samples: int = 200) -> dict[str, tuple[bool, int]]:
    """Check the unit and associativity laws pointwise.

    Unit laws are checked on every vertex of S X.  Both sides of the
    associativity law send a vertex W of S S S X to ⋃⋃W, and both commute
    with unions of W; so checking every singleton {U} (U a vertex of S S X)
    plus random unions covers the law.  Returns law -> (ok, points checked).
    """
    SX = subset_complex(X)
    left = right = 0
    ok_left = ok_right = True
    for u in SX.web:
        left += 1
        ok_left &= flatten(Simplex([a]) for a in u) == u  # μ ∘ S ε
        right += 1
        ok_right &= flatten([u]) == u                     # μ ∘ ε_S
    assoc_ok = True
    checked = 0
    by_facet: dict[Simplex, list[Simplex]] = {}
    for F in X.facets:
        by_facet[F] = list(_faces_families(F))
    for Us in by_facet.values():
        for U in Us:
            W = Simplex([U])
            assoc_ok &= _assoc_sides(W)
            checked += 1
    if rng is not None:
        facets = list(by_facet)
        for _ in range(samples):
            Us = by_facet[facets[rng.integers(len(facets))]]
            k = int(rng.integers(1, min(len(Us), 5) + 1))
            pick = rng.choice(len(Us), size=k, replace=False)
            W = Simplex(Us[i] for i in pick)
            if not is_subset_simplex(X, W, 2):
                assoc_ok = False
            assoc_ok &= _assoc_sides(W)
            checked += 1
    return {"left_unit": (ok_left, left), "right_unit": (ok_right, right), "associativity": (assoc_ok, checked)}


def _assoc_sides(W: Simplex) -> bool:
    mu_mu = flatten(flatten(W))          # μ_X ∘ μ_{S X}: flatten W first
    mu_smu = flatten(flatten(U) for U in W)  # μ_X ∘ S μ_X: flatten each member first
    return mu_mu == mu_smu


def functor_law_report(f: SimplicialMap, g: SimplicialMap) -> dict[str, bool]:
    """``S id = id`` and ``S(g∘f) = S g ∘ S f`` on every vertex of ``S X``."""
    Sf, Sg = subset_map(f), subset_map(g)
    Sgf = subset_map(f.compose(g))
    SX = Sf.source
    ident = subset_map(SimplicialMap.identity(f.source))
    return {
        "identity": all(ident(u) == u for u in SX.web),
        "composition": all(Sgf(u) == Sg(Sf(u)) for u in SX.web),
    }

