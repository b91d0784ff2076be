"""Simplicial relations, counting relations, and the naive chain "functors".

None of the chain-level constructions here is functorial; this module exists
to exhibit exactly how they fail.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .complex import Complex, ComplexError, Simplex, from_facets, vertex_key
from .homology import (IntegerMatrix, chain_complex, is_chain_map, permutation_sign)
from .semantics import CoherenceSpace

Chain = dict  # Simplex -> int, zero coefficients omitted


def is_simplicial_relation(pairs: Iterable[tuple], X: Complex, Y: Complex) -> tuple[bool, Simplex | None]:
    """Check ``t·σ ∈ SY`` for every simplex σ of X, in canonical order."""
    pairs = set(pairs)
    for a, b in pairs:
        if a not in X.web or b not in Y.web:
            raise ComplexError(f"pair ({a!r}, {b!r}) leaves the webs")
    plus = _plus_sets(pairs)
    for sigma in X.simplices():
        img = set().union(*(plus.get(a, ()) for a in sigma))
        if not Y.is_simplex(img):
            return False, sigma
    return True, None


def _plus_sets(pairs) -> dict:
    plus: dict = {}
    for a, b in pairs:
        plus.setdefault(a, set()).add(b)
    return plus


class SimplicialRelation:
    """Relation ``t ⊆ |X| × |Y|`` sending simplices to simplices."""

    def __init__(self, source: Complex, target: Complex, pairs: Iterable[tuple], check: bool = True):
        self.source = source
        self.target = target
        self.pairs = frozenset(pairs)
        self._plus = {a: frozenset(bs) for a, bs in _plus_sets(self.pairs).items()}
        if check:
            ok, bad = is_simplicial_relation(self.pairs, source, target)
            if not ok:
                raise ComplexError(f"not a simplicial relation: image of {bad!r} is not a simplex")

    def plus(self, a) -> frozenset:
        """``t⁺(a)``."""
        return self._plus.get(a, frozenset())

    def __eq__(self, other) -> bool:
        if isinstance(other, SimplicialRelation):
            return self.pairs == other.pairs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"SimplicialRelation({sorted(self.pairs, key=lambda p: (vertex_key(p[0]), vertex_key(p[1])))!r})"

    @classmethod
    def identity(cls, X: Complex) -> "SimplicialRelation":
        return cls(X, X, ((a, a) for a in X.web), check=False)

    @classmethod
    def graph(cls, source: Complex, target: Complex, mapping: Mapping) -> "SimplicialRelation":
        return cls(source, target, mapping.items())


def relation_image(t: SimplicialRelation, sigma) -> Simplex:
    """``t·σ``, the union of ``t⁺(a)`` over a ∈ σ."""
    if not t.source.is_simplex(sigma):
        raise ComplexError(f"{sigma!r} is not a simplex of the source")
    return Simplex(set().union(*(t.plus(a) for a in sigma)))


def compose_relations(s: SimplicialRelation, t: SimplicialRelation) -> SimplicialRelation:
    """``t ∘ s`` for ``s: X → Y`` and ``t: Y → Z``."""
    if s.target != t.source:
        raise ComplexError("relations are not composable")
    pairs = {(a, c) for a, b in s.pairs for c in t.plus(b)}
    out = SimplicialRelation(s.source, t.target, pairs, check=False)
    ok, bad = is_simplicial_relation(pairs, s.source, t.target)
    assert ok, f"composite fails at {bad!r}"
    return out


# --------------------------------------------------------- counting relations

class CountingRelation:
    """ℕ-valued matrix on ``|X| × |Y|`` whose row supports act simplicially."""

    def __init__(self, source: Complex, target: Complex, matrix: Mapping[tuple, int], check: bool = True):
        self.source = source
        self.target = target
        self.matrix = {}
        for (a, b), n in matrix.items():
            if a not in source.web or b not in target.web:
                raise ComplexError(f"entry ({a!r}, {b!r}) leaves the webs")
            if n < 0:
                raise ComplexError("counting relations have nonnegative entries")
            if n:
                self.matrix[a, b] = int(n)
        if check:
            ok, bad = is_simplicial_relation(self.matrix, source, target)
            if not ok:
                raise ComplexError(f"supports of {bad!r} do not form a simplex")

    def __getitem__(self, ab) -> int:
        return self.matrix.get(ab, 0)

    def row(self, a) -> dict:
        return {b: n for (x, b), n in self.matrix.items() if x == a}

    @classmethod
    def from_rows(cls, source: Complex, target: Complex, rows: list[list[int]],
                  order: list | None = None, check: bool = True) -> "CountingRelation":
        """Rows indexed by source vertices and columns by target vertices, in ``order``."""
        src = order or list(source.vertices)
        tgt = order or list(target.vertices)
        return cls(source, target, {(a, b): rows[i][j] for i, a in enumerate(src) for j, b in enumerate(tgt)}, check)


def _weighted_image(plus: Mapping, weight, s: Simplex, Y: Complex) -> Chain:
    out: Chain = {}
    choices = [sorted(plus.get(a, ()), key=vertex_key) for a in s]
    for bs in itertools.product(*choices):
        if len(set(bs)) < len(bs):
            continue
        img = Simplex(bs)
        assert Y.is_simplex(img), f"{img!r} is not a simplex of the target"
        w = permutation_sign([vertex_key(b) for b in bs])
        for a, b in zip(s, bs):
            w *= weight(a, b)
        if w:
            out[img] = out.get(img, 0) + w
    return {k: v for k, v in out.items() if v}


def _as_matrix(X: Complex, Y: Complex, k: int, image) -> IntegerMatrix:
    rows = {s: i for i, s in enumerate(Y.simplices_of_dim(k))}
    cols = X.simplices_of_dim(k)
    entries = {}
    for j, s in enumerate(cols):
        for img, c in image(s).items():
            entries[rows[img], j] = c
    return IntegerMatrix(len(rows), len(cols), entries)


def naive_chain_image(t: SimplicialRelation, k: int) -> IntegerMatrix:
    """``F_k t``: each oriented simplex goes to the sum of all oriented
    simplices ``(b_0, ..., b_k)`` with ``(a_i, b_i) ∈ t``."""
    return _as_matrix(t.source, t.target, k, lambda s: naive_chain_of(t, s))


def naive_chain_of(t: SimplicialRelation, s) -> Chain:
    return _weighted_image(t._plus, lambda a, b: 1, Simplex.of(s), t.target)


def counting_chain_image(t: CountingRelation, k: int) -> IntegerMatrix:
    """``F_k t`` weighted by the products of matrix entries."""
    return _as_matrix(t.source, t.target, k, lambda s: counting_chain_of(t, s))


def counting_chain_of(t: CountingRelation, s) -> Chain:
    plus = _plus_sets(t.matrix)
    return _weighted_image(plus, lambda a, b: t[a, b], Simplex.of(s), t.target)


def naive_chain_family(t) -> dict[int, IntegerMatrix]:
    """All ``F_k t`` for k up to the source dimension."""
    fn = counting_chain_image if isinstance(t, CountingRelation) else naive_chain_image
    return {k: fn(t, k) for k in range(t.source.dim + 1)}


def naive_is_chain_map(t):
    return is_chain_map(naive_chain_family(t), chain_complex(t.source), chain_complex(t.target))


# ------------------------------------------------------------ chain algebra

def boundary_of(chain: Chain) -> Chain:
    out: Chain = {}
    for s, c in chain.items():
        vs = s.vertices
        if len(vs) == 1:
            continue
        for i in range(len(vs)):
            face = Simplex(vs[:i] + vs[i + 1:])
            out[face] = out.get(face, 0) + (-c if i % 2 else c)
    return {k: v for k, v in out.items() if v}


def apply_on_chain(image, chain: Chain) -> Chain:
    """Extend ``image`` (simplex -> chain) linearly."""
    out: Chain = {}
    for s, c in chain.items():
        for img, d in image(s).items():
            out[img] = out.get(img, 0) + c * d
    return {k: v for k, v in out.items() if v}


def format_chain(chain: Chain) -> str:
    if not chain:
        return "0"
    parts = []
    for s in sorted(chain):
        c = chain[s]
        body = "(" + ",".join(str(v) for v in s) + ")"
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, mag + body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def chain(**terms) -> Chain:
    """Chain on single-vertex simplices, e.g. ``chain(b2=2, b0=-1)``."""
    return {Simplex([v]): c for v, c in terms.items() if c}


# ------------------------------------------------------- coherence complexes

@dataclass(frozen=True)
class CoherenceComplex:
    underlying: Complex
    coherence: CoherenceSpace

    def __post_init__(self):
        if frozenset(self.coherence.web) != self.underlying.web:
            raise ComplexError("complex and coherence space must share their web")

    @classmethod
    def build(cls, X: Complex, coherent_pairs: Iterable[tuple] = ()) -> "CoherenceComplex":
        strict = frozenset(frozenset(p) for p in coherent_pairs)
        return cls(X, CoherenceSpace(X.vertices, strict))


def coherence_morphism_check(pairs: Iterable[tuple], X: CoherenceComplex, Y: CoherenceComplex) -> bool:
    """Simplicial relation that is also a clique of ``cs(X) ⊸ cs(Y)``.

    Distinct pairs (a, b), (a', b') must be strictly coherent in the linear
    arrow: a strictly incoherent with a', or b strictly coherent with b'.
    """
    pairs = set(pairs)
    ok, _ = is_simplicial_relation(pairs, X.underlying, Y.underlying)
    if not ok:
        return False
    cx, cy = X.coherence, Y.coherence
    for (a, b), (a2, b2) in itertools.combinations(pairs, 2):
        if not (cx.incoh(a, a2) or cy.coh(b, b2)):
            return False
    return True


# --------------------------------------------------------------- text format

def parse_relation_text(text: str) -> tuple[dict, dict]:
    """Parse ``a -> b`` / ``a -> b : n`` lines.

    Returns ``(entries, header)`` where ``entries`` maps pairs to counts (1
    for plain lines) and ``header`` holds optional ``source:``/``target:`` names.
    """
    entries: dict = {}
    header: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            key, sep, val = line.partition(":")
            if sep and key.strip() in ("source", "target"):
                header[key.strip()] = val.strip()
                continue
            raise ComplexError(f"line {lineno}: expected 'a -> b'")
        lhs, rhs = line.split("->", 1)
        count = 1
        if ":" in rhs:
            rhs, n = rhs.split(":", 1)
            try:
                count = int(n)
            except ValueError:
                raise ComplexError(f"line {lineno}: bad count {n.strip()!r}") from None
            if count < 0:
                raise ComplexError(f"line {lineno}: negative count")
        a, b = lhs.strip(), rhs.strip()
        if not a or not b or len(a.split()) != 1 or len(b.split()) != 1:
            raise ComplexError(f"line {lineno}: expected single vertex names")
        if (a, b) in entries:
            raise ComplexError(f"line {lineno}: duplicate pair {a} -> {b}")
        entries[a, b] = count
    return entries, header


# ------------------------------------------------------ the four scenarios

def hollow_triangle(prefix: str = "a") -> Complex:
    v = [f"{prefix}{i}" for i in range(3)]
    return from_facets(v, [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])])


def solid_triangle(prefix: str = "b") -> Complex:
    v = [f"{prefix}{i}" for i in range(3)]
    return from_facets(v, [v])


SAMPLE_RELATION = {("a0", "b0"), ("a0", "b1"), ("a1", "b1"), ("a2", "b2")}
COUNTING_ROWS = [[1, 0, 1],
                 [0, 0, 1],
                 [1, 0, 0]]


class VerificationError(AssertionError):
    pass


def _scenario_relation() -> dict:
    X, Y = hollow_triangle(), solid_triangle()
    t = SimplicialRelation(X, Y, SAMPLE_RELATION)
    edge = Simplex(["a0", "a2"])
    lhs = boundary_of(naive_chain_of(t, edge))
    rhs = apply_on_chain(lambda s: naive_chain_of(t, s), boundary_of({edge: 1}))
    check = naive_is_chain_map(t)
    expected_lhs, expected_rhs = chain(b2=2, b0=-1, b1=-1), chain(b2=1, b0=-1, b1=-1)
    ok = (lhs == expected_lhs and rhs == expected_rhs and lhs != rhs and not check
          and (0, edge) in check.violations)
    return {
        "name": "relation-non-chain-map",
        "status": "pass" if ok else "fail",
        "lhs": format_chain(lhs), "rhs": format_chain(rhs),
        "expected_lhs": format_chain(expected_lhs), "expected_rhs": format_chain(expected_rhs),
        "F1(a0,a2)": format_chain(naive_chain_of(t, edge)),
        "violations": [[k, str(s)] for k, s in check.violations],
    }


def _scenario_functoriality() -> dict:
    X = from_facets(["a"], [["a"]])
    Y = from_facets(["b", "b'"], [["b", "b'"]])
    Z = from_facets(["c"], [["c"]])
    s = SimplicialRelation(X, Y, {("a", "b"), ("a", "b'")})
    t = SimplicialRelation(Y, Z, {("b", "c"), ("b'", "c")})
    ts = compose_relations(s, t)
    a = {Simplex(["a"]): 1}
    lhs = apply_on_chain(lambda x: naive_chain_of(ts, x), a)
    rhs = apply_on_chain(lambda y: naive_chain_of(t, y), apply_on_chain(lambda x: naive_chain_of(s, x), a))
    expected_lhs, expected_rhs = chain(c=1), chain(c=2)
    ok = (ts.pairs == {("a", "c")} and lhs == expected_lhs and rhs == expected_rhs
          and naive_chain_image(ts, 0) != naive_chain_image(t, 0) @ naive_chain_image(s, 0))
    return {
        "name": "relation-non-functorial",
        "status": "pass" if ok else "fail",
        "lhs": format_chain(lhs), "rhs": format_chain(rhs),
        "expected_lhs": format_chain(expected_lhs), "expected_rhs": format_chain(expected_rhs),
    }


def _scenario_matrix() -> dict:
    X = hollow_triangle()
    t = CountingRelation.from_rows(X, X, COUNTING_ROWS)
    edge = Simplex(["a0", "a1"])
    image = counting_chain_of(t, edge)
    lhs = boundary_of(image)
    rhs = apply_on_chain(lambda s: counting_chain_of(t, s), boundary_of({edge: 1}))
    # the displayed coefficient formula (t_{a1 b} - t_{a0 b}) for b = a0, a1, a2
    displayed = {Simplex([b]): t["a1", b] - t["a0", b] for b in X.vertices}
    displayed = {k: v for k, v in displayed.items() if v}
    printed_lhs = boundary_of({Simplex(["a1", "a2"]): 1})
    expected_rhs = chain(a0=-1)
    ok = (rhs == expected_rhs and displayed == expected_rhs and lhs != rhs and printed_lhs != rhs
          and not naive_is_chain_map(t))
    return {
        "name": "matrix-non-chain-map",
        "status": "pass" if ok else "fail",
        "lhs": format_chain(lhs), "rhs": format_chain(rhs),
        "expected_rhs": format_chain(expected_rhs),
        "F1(a0,a1)": format_chain(image),
        "printed_F1(a0,a1)": "(a1,a2)",
        "printed_lhs": format_chain(printed_lhs),
        "note": "computed F1(a0,a1) differs from the printed (a1,a2); both boundaries differ from the rhs",
    }


def _scenario_coherence() -> dict:
    X = CoherenceComplex.build(hollow_triangle())
    Y = CoherenceComplex.build(solid_triangle(), [("b0", "b1")])
    morphism = coherence_morphism_check(SAMPLE_RELATION, X, Y)
    t = SimplicialRelation(X.underlying, Y.underlying, SAMPLE_RELATION)
    edge = Simplex(["a0", "a2"])
    lhs = boundary_of(naive_chain_of(t, edge))
    rhs = apply_on_chain(lambda s: naive_chain_of(t, s), boundary_of({edge: 1}))
    ok = morphism and lhs != rhs and not naive_is_chain_map(t)
    return {
        "name": "coherence-non-chain-map",
        "status": "pass" if ok else "fail",
        "morphism": morphism,
        "lhs": format_chain(lhs), "rhs": format_chain(rhs),
    }


def verify_paper_counterexamples(strict: bool = True) -> list[dict]:
    """Rebuild all four failed constructions and check the displayed values.

    With ``strict`` a failing scenario raises :class:`VerificationError`.
    """
    results = [_scenario_relation(), _scenario_functoriality(), _scenario_matrix(), _scenario_coherence()]
    failed = [r["name"] for r in results if r["status"] != "pass"]
    if strict and failed:
        raise VerificationError(f"failing scenarios: {', '.join(failed)}")
    return results
