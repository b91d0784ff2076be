"""Named verification suites shared by the CLI and the acceptance tests.

Every check is a plain JSON-ready dict with ``name``, ``status`` (``pass``,
``fail`` or ``computed``), ``expected`` and ``computed``.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from typing import Callable

import numpy as np

from .complex import Complex, Simplex, SimplicialMap, are_isomorphic, standard_space
from .generators import (all_small_complexes, random_complex, random_integer_matrix,
                         random_simplicial_map, random_simplicial_relation)
from .homology import boundary_matrix, homology_groups, homology_report, pad_groups, smith_normal_form
from .monad import (functor_law_report, homology_of_subset_space, iterate_subset, kleisli_compose, kleisli_identity,
                    kleisli_of_relation, monad_law_report, relation_of_kleisli, rs_functor_map,
                    subset_complex)
from .proofs import proofs_space, witness_check
from .relations import SimplicialRelation, compose_relations, verify_paper_counterexamples
from .semantics import (Bool, With, bool_point, bool_with, gustave, gustave_label, gustave_points, interpret,
                        space_complex)

Check = dict
DEFAULT_SEED = 20240611


def check(name: str, ok: bool | None, expected, computed, **extra) -> Check:
    status = "computed" if ok is None else ("pass" if ok else "fail")
    return {"name": name, "status": status, "expected": expected, "computed": computed, **extra}


def groups_text(groups) -> list[str]:
    return [str(g) for g in groups]


def semantic_complex(A) -> Complex:
    return space_complex(interpret(A))


# ------------------------------------------------------------ criteria 1-3

def pinned_homology() -> list[Check]:
    out = []
    for k, expected in ((2, ["Z", "Z"]), (3, ["Z", "0", "Z"])):
        got = groups_text(homology_groups(semantic_complex(bool_with(k))))
        out.append(check(f"homology-bool-with-{k}", got == expected, expected, got))
    return out


def bool3_proofs() -> list[Check]:
    A = bool_with(3)
    ps = proofs_space(A)
    want = {frozenset({bool_point(3, 1, i), bool_point(3, 2, j), bool_point(3, 3, m)})
            for i, j, m in itertools.product((1, 2), repeat=3)}
    semantic = semantic_complex(A)
    iso = are_isomorphic(ps.complex, semantic)
    return [
        check("bool-with-3-proof-count", len(ps.proofs) == 8, 8, len(ps.proofs), raw=ps.raw_count),
        check("bool-with-3-denotations", set(ps.denotations) == want,
              "all {a_i^1, a_j^2, a_m^3}", f"{len(set(ps.denotations) & want)} of {len(want)} matched"),
        check("bool-with-3-all-witnessed", iso is not None and not ps.unwitnessed,
              "isomorphic", "isomorphic" if iso is not None else "not isomorphic"),
    ]


def gustave_checks(variant: str = "bottom_units") -> list[Check]:
    G = gustave(variant)
    tri = gustave_points()
    semantic = semantic_complex(G)
    ps = proofs_space(G, mix=False)
    witness = witness_check(ps, tri)
    edges = [e for e in itertools.combinations(tri, 2)]
    out = [
        check("gustave-triangle-in-semantics", semantic.is_simplex(tri), True, semantic.is_simplex(tri)),
        check("gustave-provable", ps.raw_count > 0, "> 0 proofs", ps.raw_count, variant=variant),
        check("gustave-triangle-unwitnessed", witness is None, None,
              None if witness is None else witness.to_sexp(),
              distinct_denotations=len(ps.proofs)),
        check("gustave-proof-complex-shape",
              not ps.complex.is_simplex(tri) and all(ps.complex.is_simplex(e) for e in edges),
              "three edges, no triangle",
              {"triangle": ps.complex.is_simplex(tri), "edges": [ps.complex.is_simplex(e) for e in edges]}),
    ]
    for name, witnessed in _edge_witnesses(ps, tri).items():
        out.append(check(f"gustave-witnesses-{name}", None, None, witnessed))
    for v in ("literal", "bottom_units"):
        for mix in (False, True):
            other = proofs_space(gustave(v), mix=mix)
            out.append(check(f"gustave-{v.replace('_', '-')}-mix-{str(mix).lower()}", None, None,
                             {"raw": other.raw_count, "distinct": len(other.proofs),
                              "unwitnessed": len(other.unwitnessed),
                              "triangle_witnessed": witness_check(other, tri) is not None}))
    return out


def _edge_witnesses(ps, tri) -> dict[str, list[list[str]]]:
    """For each edge {a_j, a_k}, the exact denotations containing it."""
    names = {p: f"a{i + 1}" for i, p in enumerate(tri)}
    out = {}
    for p, q in itertools.combinations(tri, 2):
        dens = [sorted(gustave_label(x) for x in d) for d in ps.denotations if p in d and q in d]
        out[f"{names[p]}{names[q]}"] = sorted(dens)
    return out


# ---------------------------------------------------------------- criterion 4

def counterexamples() -> list[Check]:
    out = []
    for r in verify_paper_counterexamples(strict=False):
        extra = {k: v for k, v in r.items() if k not in ("name", "status", "lhs", "rhs")}
        expected = {"lhs": r.get("expected_lhs"), "rhs": r.get("expected_rhs")}
        if r["name"] == "matrix-non-chain-map":
            expected = {"lhs": "unequal to rhs under both readings", "rhs": r["expected_rhs"]}
        elif r["name"] == "coherence-non-chain-map":
            expected = {"morphism": True, "chain_map": False}
        out.append({"name": r["name"], "status": r["status"], "expected": expected,
                    "computed": {"lhs": r["lhs"], "rhs": r["rhs"]}, **extra})
    return out


# ---------------------------------------------------------------- criterion 5

def subset_delta1() -> Check:
    SD1 = subset_complex(standard_space("delta", 1))
    iso = are_isomorphic(SD1, standard_space("delta", 2))
    shown = None if iso is None else {str(k): v for k, v in sorted(iso.items(), key=lambda kv: kv[0].sort_key)}
    return check("subset-delta1-is-delta2", iso is not None, "isomorphic", shown)


def monad_laws(max_web: int = 4) -> list[Check]:
    corpus = all_small_complexes(max_web)
    totals = {"left_unit": [True, 0], "right_unit": [True, 0], "associativity": [True, 0]}
    for X in corpus:
        for law, (ok, n) in monad_law_report(X).items():
            totals[law][0] &= ok
            totals[law][1] += n
    return [check(f"monad-{law.replace('_', '-')}", ok, "holds", f"{n} points over {len(corpus)} complexes")
            for law, (ok, n) in totals.items()]


def _random_pair(rng):
    X = random_complex(rng, int(rng.integers(1, 6)), prefix="x")
    Y = random_complex(rng, int(rng.integers(1, 6)), prefix="y")
    Z = random_complex(rng, int(rng.integers(1, 6)), prefix="z")
    return random_simplicial_relation(rng, X, Y), random_simplicial_relation(rng, Y, Z)


def kleisli_functoriality(n: int = 100, seed: int = DEFAULT_SEED) -> list[Check]:
    rng = np.random.default_rng(seed)
    round_trip = functorial = composition = identity = 0
    for _ in range(n):
        s, t = _random_pair(rng)
        ts = compose_relations(s, t)
        gs, gt = kleisli_of_relation(s), kleisli_of_relation(t)
        round_trip += relation_of_kleisli(gs) == s and kleisli_of_relation(relation_of_kleisli(gs)) == gs
        composition += kleisli_compose(gs, gt) == kleisli_of_relation(ts)
        functorial += rs_functor_map(ts) == rs_functor_map(s).compose(rs_functor_map(t))
        ident = rs_functor_map(SimplicialRelation.identity(s.source))
        identity += ident == SimplicialMap.identity(subset_complex(s.source)) and \
            kleisli_compose(kleisli_identity(s.source), gs) == gs
    return [
        check("kleisli-round-trip", round_trip == n, n, round_trip),
        check("kleisli-composition-is-relation-composition", composition == n, n, composition),
        check("rs-functor-composition", functorial == n, n, functorial),
        check("rs-functor-identity", identity == n, n, identity),
    ]


def subset_functor_laws(n: int = 100, seed: int = DEFAULT_SEED) -> list[Check]:
    rng = np.random.default_rng(seed + 1)
    ok_id = ok_comp = 0
    for _ in range(n):
        X, Y, Z = (random_complex(rng, int(rng.integers(1, 6)), prefix=p) for p in "xyz")
        r = functor_law_report(random_simplicial_map(rng, X, Y), random_simplicial_map(rng, Y, Z))
        ok_id += r["identity"]
        ok_comp += r["composition"]
    return [check("subset-functor-identity", ok_id == n, n, ok_id),
            check("subset-functor-composition", ok_comp == n, n, ok_comp)]


# ---------------------------------------------------------------- criterion 6

def open_question(max_facet: int = 12) -> list[Check]:
    S1, S2 = standard_space("sphere", 1), standard_space("sphere", 2)
    g1, size1 = homology_of_subset_space(S1, 1, max_facet)
    want1 = pad_groups(homology_groups(S1), len(g1) - 1)
    g2, size2 = homology_of_subset_space(S2, 1, max_facet)
    g2 = pad_groups(g2, 6)[:7]
    want2 = pad_groups(homology_groups(S2), 6)
    octa = proofs_space(bool_with(3)).complex
    g3 = homology_groups(subset_complex(octa))
    want3 = pad_groups(homology_groups(octa), len(g3) - 1)
    return [
        check("subset-sphere1-matches-sphere1", g1 == want1, groups_text(want1), groups_text(g1), size=size1),
        check("subset-sphere2-vs-sphere2", None, groups_text(want2), groups_text(g2),
              match=g2 == want2, size=size2),
        check("subset-octahedron-vs-octahedron", None, groups_text(want3), groups_text(g3), match=g3 == want3),
        random_subset_evidence(),
    ]


def random_subset_evidence(n: int = 100, seed: int = DEFAULT_SEED) -> Check:
    """How often H(S X) = H(X) on random small complexes (reported, not asserted)."""
    rng = np.random.default_rng(seed + 3)
    matches = 0
    for _ in range(n):
        X = random_complex(rng, int(rng.integers(1, 7)), max_size=3)
        gx, gs = homology_groups(X), homology_groups(subset_complex(X))
        m = max(len(gx), len(gs)) - 1
        matches += pad_groups(gx, m) == pad_groups(gs, m)
    return check("subset-random-complexes", None, n, matches, match=matches == n, instances=n)


def subset_sphere_report(max_facet: int = 12) -> dict:
    """The golden report: H(S S^n) next to H(S^n) for n = 1, 2."""
    out = {"format_version": 1, "reports": []}
    for n in (1, 2):
        X = standard_space("sphere", n)
        SX = iterate_subset(X, 1, max_facet)
        groups = homology_groups(SX)
        base = pad_groups(homology_groups(X), len(groups) - 1)
        rep = homology_report(f"S S^{n}", SX, groups)
        rep["base"] = groups_text(base)
        rep["match"] = base == groups
        out["reports"].append(rep)
    return out


# ---------------------------------------------------------------- criterion 7

def iso_invariants(A, B, mix: bool = False) -> tuple[list, list]:
    """Homology of ``S[A]`` and ``S[B]``, each padded to a common length."""
    ga = homology_groups(subset_complex(proofs_space(A, mix).complex))
    gb = homology_groups(subset_complex(proofs_space(B, mix).complex))
    n = max(len(ga), len(gb)) - 1
    return pad_groups(ga, n), pad_groups(gb, n)


def with_associativity_smoke() -> list[Check]:
    A = With(With(Bool, Bool), Bool)
    B = With(Bool, With(Bool, Bool))
    ga, gb = iso_invariants(A, B)
    return [check("with-associativity-invariants", ga == gb, groups_text(ga), groups_text(gb))]


# ---------------------------------------------------------------- criterion 8

def _det(M: list[list[int]]) -> int:
    """Leibniz expansion; only for the tiny minors of the oracle."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, p in enumerate(perm):
            prod *= M[i][p]
            if not prod:
                break
        total += -prod if inv % 2 else prod
    return total


def minor_gcd_factors(M: list[list[int]]) -> list[int]:
    """Invariant factors from gcds of k×k minors: d_k = D_k / D_{k-1}."""
    m, n = len(M), len(M[0])
    prev, out = 1, []
    for k in range(1, min(m, n) + 1):
        D = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                D = math.gcd(D, _det([[M[i][j] for j in cols] for i in rows]))
        if D == 0:
            break
        out.append(D // prev)
        prev = D
    return out


def component_count(X: Complex) -> int:
    nb = {v: set() for v in X.web}
    for F in X.facets:
        for a, b in itertools.combinations(F, 2):
            nb[a].add(b)
            nb[b].add(a)
    seen, count = set(), 0
    for v in X.web:
        if v in seen:
            continue
        count += 1
        queue = deque([v])
        seen.add(v)
        while queue:
            for w in nb[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return count


def property_suites(n: int = 100, seed: int = DEFAULT_SEED) -> list[Check]:
    rng = np.random.default_rng(seed + 2)
    fails = {"boundary-squared-zero": 0, "euler-poincare": 0, "snf-minor-gcd": 0, "betti0-components": 0}
    for _ in range(n):
        X = random_complex(rng, int(rng.integers(1, 8)), max_size=5)
        for k in range(2, X.dim + 1):
            if not (boundary_matrix(X, k - 1) @ boundary_matrix(X, k)).is_zero():
                fails["boundary-squared-zero"] += 1
                break
        groups = homology_groups(X)
        if sum((-1) ** k * g.betti for k, g in enumerate(groups)) != X.euler_characteristic():
            fails["euler-poincare"] += 1
        if groups[0].betti != component_count(X):
            fails["betti0-components"] += 1
        M = random_integer_matrix(rng)
        if smith_normal_form(M)[0] != minor_gcd_factors(M):
            fails["snf-minor-gcd"] += 1
    return [check(name, f == 0, 0, f, instances=n) for name, f in fails.items()]


# ------------------------------------------------------------------ registry

CRITERIA: dict[int, Callable[[], list[Check]]] = {
    1: pinned_homology,
    2: bool3_proofs,
    3: gustave_checks,
    4: counterexamples,
    5: lambda: [subset_delta1(), *monad_laws(), *kleisli_functoriality()],
    6: open_question,
    7: with_associativity_smoke,
    8: property_suites,
}

SUITES: dict[str, Callable[[], list[Check]]] = {
    "counterexamples": counterexamples,
    "monad": lambda: [subset_delta1(), *monad_laws()],
    "functor": lambda: [*kleisli_functoriality(), *subset_functor_laws()],
    "paper-all": lambda: [dict(c, criterion=i) for i, f in CRITERIA.items() for c in f()],
}


def all_passed(checks: list[Check]) -> bool:
    return all(c["status"] != "fail" for c in checks)
