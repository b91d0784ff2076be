"""Finite abstract simplicial complexes stored by facets.

Vertices may be plain names (``int`` or ``str``), semantic web points
(:class:`proofspace.semantics.Point`) or simplices themselves (the vertices of
a subset space).  All of them share one total order, given by
:func:`vertex_key`, so simplex bases and boundary matrices are reproducible.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Mapping


class ComplexError(ValueError):
    """Malformed complex, simplex or facet file."""


class SizeGuardError(ValueError):
    """Refused a computation whose size exceeds a configured bound."""


def vertex_key(v) -> tuple:
    """Sort key realising the total order plain-name < point < simplex-label."""
    key = getattr(v, "sort_key", None)
    if key is not None:
        return key
    if isinstance(v, bool):
        raise ComplexError(f"unsupported vertex label {v!r}")
    if isinstance(v, int):
        return (0, 0, v)
    if isinstance(v, str):
        return (0, 1, v)
    raise ComplexError(f"unsupported vertex label {v!r}")


class Simplex:
    """Nonempty finite vertex set, kept sorted by :func:`vertex_key`.

    A simplex is itself a valid vertex label, ordered by (cardinality,
    member order); that is what makes ``S X`` well ordered.
    """

    __slots__ = ("vertices", "_set", "sort_key", "_hash")

    def __init__(self, vertices: Iterable):
        vs = list(vertices)
        if not vs:
            raise ComplexError("a simplex must be nonempty")
        s = frozenset(vs)
        if len(s) != len(vs):
            raise ComplexError(f"duplicate vertices in {vs!r}")
        keyed = sorted((vertex_key(v), v) for v in vs) if len(vs) > 1 else [(vertex_key(vs[0]), vs[0])]
        self.vertices = tuple(v for _, v in keyed)
        self._set = s
        self.sort_key = (2, len(vs), tuple(k for k, _ in keyed))
        self._hash = hash(s)

    @classmethod
    def of(cls, s) -> "Simplex":
        return s if isinstance(s, Simplex) else cls(s)

    def __iter__(self) -> Iterator:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._set

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Simplex):
            return self._set == other._set
        return NotImplemented

    def __lt__(self, other: "Simplex") -> bool:
        return self.sort_key < other.sort_key

    def __le__(self, other: "Simplex") -> bool:
        return self.sort_key <= other.sort_key

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def as_set(self) -> frozenset:
        return self._set

    def issubset(self, other) -> bool:
        return self._set <= (other._set if isinstance(other, Simplex) else frozenset(other))

    def union(self, *others) -> "Simplex":
        s = set(self._set)
        for o in others:
            s.update(o)
        return Simplex(s)

    def faces(self) -> Iterator["Simplex"]:
        """All nonempty faces, including the simplex itself."""
        for r in range(1, len(self.vertices) + 1):
            for c in itertools.combinations(self.vertices, r):
                yield Simplex(c)

    def __repr__(self) -> str:
        return "{" + ",".join(_show(v) for v in self.vertices) + "}"


def _show(v) -> str:
    return repr(v) if not isinstance(v, str) else v


class Complex:
    """Abstract simplicial complex given by its web and facets.

    Construct with :func:`from_facets` unless the facets are known to be an
    antichain covering the web.
    """

    def __init__(self, web: Iterable, facets: Iterable[Simplex]):
        self.web = frozenset(web)
        self.vertices = tuple(sorted(self.web, key=vertex_key))
        self.facets = tuple(sorted(Simplex.of(f) for f in facets))
        self.index = {v: i for i, v in enumerate(self.vertices)}
        covered = set()
        for f in self.facets:
            if not f.as_set() <= self.web:
                raise ComplexError(f"facet {f!r} leaves the web")
            covered |= f.as_set()
        if covered != self.web:
            raise ComplexError(f"uncovered web vertices {sorted(self.web - covered, key=vertex_key)!r}")

    @property
    def dim(self) -> int:
        return max((f.dim for f in self.facets), default=-1)

    @property
    def max_facet(self) -> int:
        return max((len(f) for f in self.facets), default=0)

    @cached_property
    def _facet_sets(self) -> tuple[frozenset, ...]:
        return tuple(f.as_set() for f in self.facets)

    @cached_property
    def _facet_indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.index[v] for v in f) for f in self.facets)

    def __eq__(self, other) -> bool:
        if isinstance(other, Complex):
            return self.web == other.web and set(self.facets) == set(other.facets)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.web, frozenset(self.facets)))

    def __repr__(self) -> str:
        return f"Complex(web={len(self.web)}, facets={list(self.facets)!r})"

    def is_simplex(self, s) -> bool:
        s = frozenset(s)
        if not s:
            return False
        return any(s <= f for f in self._facet_sets)

    def index_simplices(self, k: int) -> list[tuple[int, ...]]:
        """Sorted k-simplices as ascending tuples of vertex indices."""
        if k < 0:
            return []
        cache = self.__dict__.setdefault("_simplex_cache", {})
        if k not in cache:
            found = set()
            for f in self._facet_indices:
                if len(f) > k:
                    found.update(itertools.combinations(f, k + 1))
            cache[k] = sorted(found)
        return cache[k]

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        vs = self.vertices
        return [Simplex(vs[i] for i in t) for t in self.index_simplices(k)]

    def simplices(self) -> Iterator[Simplex]:
        for k in range(self.dim + 1):
            yield from self.simplices_of_dim(k)

    def f_vector(self) -> list[int]:
        return [len(self.index_simplices(k)) for k in range(self.dim + 1)]

    def num_simplices(self) -> int:
        return sum(self.f_vector())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def relabel(self, mapping: Mapping) -> "Complex":
        return Complex((mapping[v] for v in self.web),
                       (Simplex(mapping[v] for v in f) for f in self.facets))


def from_facets(web: Iterable, generators: Iterable[Iterable]) -> Complex:
    """Build a complex from any generating vertex sets.

    Non-maximal generators are dropped and uncovered web vertices become
    singleton facets.
    """
    web = frozenset(web)
    gens = set()
    for g in generators:
        g = frozenset(g)
        if not g:
            raise ComplexError("empty generator")
        if not g <= web:
            raise ComplexError(f"generator {sorted(g - web, key=vertex_key)!r} outside web")
        gens.add(g)
    facets = _maximal(gens)
    covered = set().union(*facets) if facets else set()
    facets.extend(frozenset([v]) for v in web - covered)
    return Complex(web, (Simplex(f) for f in facets))


def _maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    # larger sets first: a set can only be dominated by a strictly larger one
    ordered = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    for s in ordered:
        if not any(s < k for k in kept):
            kept.append(s)
    return kept


def down_closure_complex(generating_cliques: Iterable[Iterable]) -> Complex:
    """Complex whose simplices are the nonempty subsets of the generators."""
    gens = [frozenset(g) for g in generating_cliques]
    if any(not g for g in gens):
        raise ComplexError("empty generator")
    web = frozenset().union(*gens) if gens else frozenset()
    return from_facets(web, gens)


def standard_space(kind: str, n: int) -> Complex:
    """``delta`` n: the full n-simplex; ``sphere`` n: boundary of the (n+1)-simplex."""
    if n < 0:
        raise ComplexError("n must be nonnegative")
    if kind == "delta":
        return Complex(range(n + 1), [Simplex(range(n + 1))])
    if kind == "sphere":
        verts = range(n + 2)
        return Complex(verts, (Simplex(c) for c in itertools.combinations(verts, n + 1)))
    raise ComplexError(f"unknown standard space {kind!r}")


def are_isomorphic(X: Complex, Y: Complex) -> dict | None:
    """Exhaustive search for a vertex bijection carrying facets onto facets."""
    if len(X.web) != len(Y.web) or len(X.facets) != len(Y.facets):
        return None
    if sorted(len(f) for f in X.facets) != sorted(len(f) for f in Y.facets):
        return None

    def profile(C: Complex):
        # facet-size multiset seen from each vertex; invariant under isomorphism
        prof = {v: [] for v in C.web}
        for f in C.facets:
            for v in f:
                prof[v].append(len(f))
        return {v: tuple(sorted(p)) for v, p in prof.items()}

    px, py = profile(X), profile(Y)
    if sorted(px.values()) != sorted(py.values()):
        return None
    xs = sorted(X.web, key=lambda v: (-len(px[v]), vertex_key(v)))
    target_facets = set(Y._facet_sets)
    x_facets = X._facet_sets
    assignment: dict = {}
    used: set = set()

    def consistent() -> bool:
        # every fully assigned facet of X must land on a facet of Y
        for f in x_facets:
            if all(v in assignment for v in f):
                if frozenset(assignment[v] for v in f) not in target_facets:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(xs):
            return True
        v = xs[i]
        for w in sorted(Y.web - used, key=vertex_key):
            if py[w] != px[v]:
                continue
            assignment[v] = w
            used.add(w)
            if consistent() and search(i + 1):
                return True
            del assignment[v]
            used.discard(w)
        return False

    return dict(assignment) if search(0) else None


class SimplicialMap:
    """Vertex map between complexes; validated on construction unless ``check=False``."""

    def __init__(self, source: Complex, target: Complex, mapping: Mapping, check: bool = True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            missing = [v for v in source.web if v not in self.mapping]
            if missing:
                raise ComplexError(f"map undefined on {missing!r}")
            bad = self.violation()
            if bad is not None:
                raise ComplexError(f"not simplicial: {bad!r} maps outside the target")

    def violation(self) -> Simplex | None:
        # images of faces are subsets of facet images, so facets suffice
        for f in self.source.facets:
            if not self.target.is_simplex(self.mapping[v] for v in f):
                return f
        return None

    def __call__(self, v):
        return self.mapping[v]

    def image(self, s) -> Simplex:
        return Simplex({self.mapping[v] for v in s})

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """``after`` applied after ``self``."""
        return SimplicialMap(self.source, after.target,
                             {v: after.mapping[w] for v, w in self.mapping.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, SimplicialMap):
            return self.mapping == other.mapping
        return NotImplemented

    @classmethod
    def identity(cls, X: Complex) -> "SimplicialMap":
        return cls(X, X, {v: v for v in X.web}, check=False)


def parse_facet_text(text: str) -> Complex:
    """Read the ``web:``/``facet:`` line format (``#`` starts a comment)."""
    web = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        head = head.strip()
        if not sep or head not in ("web", "facet"):
            raise ComplexError(f"line {lineno}: expected 'web:' or 'facet:'")
        toks = rest.split()
        if len(set(toks)) != len(toks):
            raise ComplexError(f"line {lineno}: duplicate vertex in {head}")
        if head == "web":
            if web is not None:
                raise ComplexError(f"line {lineno}: second web line")
            web = toks
        else:
            if not toks:
                raise ComplexError(f"line {lineno}: empty facet")
            facets.append(toks)
    if web is None:
        raise ComplexError("missing web line")
    return from_facets(web, facets)


def format_facet_text(X: Complex) -> str:
    lines = ["web: " + " ".join(str(v) for v in X.vertices)]
    lines += ["facet: " + " ".join(str(v) for v in f) for f in X.facets]
    return "\n".join(lines) + "\n"
