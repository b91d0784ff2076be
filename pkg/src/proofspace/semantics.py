"""Unit-only MALL formulas and their coherence-space interpretation."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .complex import Complex, Simplex, from_facets

ONE, BOT, PLUS, WITH, TENSOR, PAR = "one", "bot", "plus", "with", "tensor", "par"
_SYMBOL = {PLUS: "+", WITH: "&", TENSOR: "*", PAR: "|"}
_OP_OF = {v: k for k, v in _SYMBOL.items()}
_OP_OF.update({"⊕": PLUS, "⊗": TENSOR, "⅋": PAR})


@dataclass(frozen=True)
class Formula:
    op: str
    left: "Formula | None" = None
    right: "Formula | None" = None

    @property
    def is_unit(self) -> bool:
        return self.op in (ONE, BOT)

    def size(self) -> int:
        return 1 if self.is_unit else 1 + self.left.size() + self.right.size()

    def __str__(self) -> str:
        if self.op == ONE:
            return "1"
        if self.op == BOT:
            return "bot"
        return f"({self.left} {_SYMBOL[self.op]} {self.right})"

    def __repr__(self) -> str:
        return f"Formula({self})"


One = Formula(ONE)
Bottom = Formula(BOT)


def Plus(a: Formula, b: Formula) -> Formula:
    return Formula(PLUS, a, b)


def With(a: Formula, b: Formula) -> Formula:
    return Formula(WITH, a, b)


def Tensor(a: Formula, b: Formula) -> Formula:
    return Formula(TENSOR, a, b)


def Par(a: Formula, b: Formula) -> Formula:
    return Formula(PAR, a, b)


class Point:
    """Element of a web: ``*``, ``inl(p)``, ``inr(p)`` or ``<p, q>``."""

    __slots__ = ("tag", "children", "sort_key", "_hash")

    def __init__(self, tag: str, *children: "Point"):
        self.tag = tag
        self.children = children
        rank = {"*": 0, "l": 1, "r": 2, "pair": 3}[tag]
        self.sort_key = (1, rank) + tuple(c.sort_key for c in children)
        self._hash = hash(self.sort_key)

    def __eq__(self, other) -> bool:
        if isinstance(other, Point):
            return self.sort_key == other.sort_key
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Point") -> bool:
        return self.sort_key < other.sort_key

    def __repr__(self) -> str:
        if self.tag == "*":
            return "*"
        if self.tag == "pair":
            return f"<{self.children[0]!r},{self.children[1]!r}>"
        return f"{self.tag}({self.children[0]!r})"


STAR = Point("*")


def inl(p: Point) -> Point:
    return Point("l", p)


def inr(p: Point) -> Point:
    return Point("r", p)


def pair(p: Point, q: Point) -> Point:
    return Point("pair", p, q)


@dataclass(frozen=True)
class CoherenceSpace:
    """Finite web with a strict coherence relation (unordered pairs)."""

    web: tuple[Point, ...]
    strict: frozenset

    def coh(self, p: Point, q: Point) -> bool:
        """Strict coherence."""
        return frozenset((p, q)) in self.strict

    def weak(self, p: Point, q: Point) -> bool:
        return p == q or self.coh(p, q)

    def incoh(self, p: Point, q: Point) -> bool:
        """Strict incoherence."""
        return p != q and not self.coh(p, q)

    def is_clique(self, points: Iterable[Point]) -> bool:
        pts = list(set(points))
        return all(self.coh(p, q) for p, q in itertools.combinations(pts, 2))

    def neighbours(self) -> dict[Point, set[Point]]:
        nb = {p: set() for p in self.web}
        for e in self.strict:
            p, q = tuple(e)
            nb[p].add(q)
            nb[q].add(p)
        return nb


@lru_cache(maxsize=None)
def interpret(A: Formula) -> CoherenceSpace:
    if A.is_unit:
        return CoherenceSpace((STAR,), frozenset())
    L, R = interpret(A.left), interpret(A.right)
    if A.op in (PLUS, WITH):
        web = tuple(inl(p) for p in L.web) + tuple(inr(q) for q in R.web)
        strict = {frozenset(inl(p) for p in e) for e in L.strict}
        strict |= {frozenset(inr(q) for q in e) for e in R.strict}
        if A.op == WITH:
            strict |= {frozenset((inl(p), inr(q))) for p in L.web for q in R.web}
        return CoherenceSpace(web, frozenset(strict))
    web = tuple(pair(p, q) for p in L.web for q in R.web)
    strict = set()
    for (p, q), (p2, q2) in itertools.combinations(itertools.product(L.web, R.web), 2):
        if A.op == TENSOR:
            ok = L.weak(p, p2) and R.weak(q, q2)
        else:
            ok = L.coh(p, p2) or R.coh(q, q2)
        if ok:
            strict.add(frozenset((pair(p, q), pair(p2, q2))))
    return CoherenceSpace(web, frozenset(strict))


def maximal_cliques(neighbours: dict) -> list[frozenset]:
    """Bron-Kerbosch with pivoting; isolated vertices give singleton cliques."""
    out: list[frozenset] = []
    if not neighbours:
        return out

    def expand(R: set, P: set, X: set):
        if not P and not X:
            out.append(frozenset(R))
            return
        pivot = max(P | X, key=lambda u: len(neighbours[u] & P))
        for v in list(P - neighbours[pivot]):
            expand(R | {v}, P & neighbours[v], X & neighbours[v])
            P.discard(v)
            X.add(v)

    expand(set(), set(neighbours), set())
    return out


def space_complex(S: CoherenceSpace) -> Complex:
    """Clique complex of the strict coherence graph."""
    return from_facets(S.web, maximal_cliques(S.neighbours()))


def is_flag(X: Complex) -> tuple[bool, Simplex | None]:
    """Whether every minimal non-simplex is an edge.

    On failure also returns the canonically least minimal non-simplex among
    those of smallest size.
    """
    nb = {v: set() for v in X.web}
    for e in X.index_simplices(1):
        a, b = X.vertices[e[0]], X.vertices[e[1]]
        nb[a].add(b)
        nb[b].add(a)
    bad = [c for c in maximal_cliques(nb) if not X.is_simplex(c)]
    if not bad:
        return True, None
    size = 3
    while True:
        found = []
        for c in bad:
            for sub in itertools.combinations(c, size):
                if not X.is_simplex(sub):
                    found.append(Simplex(sub))
        if found:
            return False, min(found)
        size += 1


# ------------------------------------------------------------------ builders

Bool = Plus(One, One)


def with_power(A: Formula, k: int) -> Formula:
    """Left-nested ``A & ... & A`` with k factors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = A
    for _ in range(k - 1):
        out = With(out, A)
    return out


def bool_with(k: int) -> Formula:
    return with_power(Bool, k)


# web points of Bool and of 1 + (1 & 1)
TRUE, FALSE = inl(STAR), inr(STAR)
G_BOT, G_TRUE, G_FALSE = inl(STAR), inr(inl(STAR)), inr(inr(STAR))


def bool_point(k: int, h: int, i: int) -> Point:
    """Point ``a_i^h`` of ``bool_with(k)``: component h (1-based), i=1 for T, 2 for F."""
    if not (1 <= h <= k and i in (1, 2)):
        raise ValueError("need 1 <= h <= k and i in (1, 2)")
    p = TRUE if i == 1 else FALSE
    if h > 1:
        p = inr(p)
    for _ in range(k - 1 if h == 1 else k - h):
        p = inl(p)
    return p


def _gustave_component(units: str) -> Formula:
    u = [One if c == "1" else Bottom for c in units]
    return Plus(u[0], With(u[1], u[2]))


GUSTAVE_UNITS = {
    "literal": "111" * 3,
    # the left unit of each component stays 1, the two under & become bot
    "bottom_units": "1bb" * 3,
}


def gustave(variant: str = "literal", units: str | None = None) -> Formula:
    """``(1 + (1 & 1)) | (1 + (1 & 1)) | (1 + (1 & 1))`` or a unit variant.

    ``mixed`` takes nine characters from ``{1, b}``, three per component in
    the order: left of +, left of &, right of &.
    """
    if variant == "mixed":
        if units is None or len(units) != 9 or set(units) - {"1", "b"}:
            raise ValueError("mixed variant needs a 9-character string over {1, b}")
    elif variant in GUSTAVE_UNITS:
        units = GUSTAVE_UNITS[variant]
    else:
        raise ValueError(f"unknown Gustave variant {variant!r}")
    c = [_gustave_component(units[3 * i:3 * i + 3]) for i in range(3)]
    return Par(Par(c[0], c[1]), c[2])


def triple(x: Point, y: Point, z: Point) -> Point:
    return pair(pair(x, y), z)


def gustave_points() -> tuple[Point, Point, Point]:
    """``a1 = (⊥,T,F)``, ``a2 = (F,⊥,T)``, ``a3 = (T,F,⊥)``."""
    return (triple(G_BOT, G_TRUE, G_FALSE),
            triple(G_FALSE, G_BOT, G_TRUE),
            triple(G_TRUE, G_FALSE, G_BOT))


def gustave_label(p: Point) -> str:
    names = {G_BOT: "⊥", G_TRUE: "T", G_FALSE: "F"}
    (x, y), z = p.children[0].children, p.children[1]
    return "(" + ",".join(names[q] for q in (x, y, z)) + ")"


def bool_label(k: int, p: Point) -> str:
    for h in range(1, k + 1):
        for i, name in ((1, "T"), (2, "F")):
            if bool_point(k, h, i) == p:
                return f"{name}{h}"
    raise ValueError(f"{p!r} is not a point of Bool^&{k}")


# -------------------------------------------------------------------- parser

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<amp>&(?P<k>\d+))|(?P<gus><gustave:[a-z_]+(?::[1b]+)?>)|"
                    r"(?P<bot>bot|⊥)|(?P<one>1)|(?P<sym>[()+&*|⊕⊗⅋]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = "amp" if m.group("amp") else m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_formula(text: str) -> Formula:
    """Parse the ASCII grammar: ``1``, ``bot``, ``(A + B)``, ``(A & B)``,
    ``(A * B)``, ``(A | B)``, ``&k(A)`` and ``<gustave:variant>``.

    Binary operators of one kind associate to the left; mixing kinds needs
    parentheses.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    def operand() -> Formula:
        kind, val, pos = peek()
        if kind == "one":
            take()
            return One
        if kind == "bot":
            take()
            return Bottom
        if kind == "amp":
            take()
            k = int(val[1:])
            if k < 1:
                raise ParseError("&k needs k >= 1", pos)
            take("sym", "(")
            inner = expr()
            take("sym", ")")
            return with_power(inner, k)
        if kind == "gus":
            take()
            parts = val[1:-1].split(":")
            try:
                return gustave(parts[1], parts[2] if len(parts) > 2 else None)
            except ValueError as e:
                raise ParseError(str(e), pos) from None
        if kind == "sym" and val == "(":
            take()
            inner = expr()
            take("sym", ")")
            return inner
        raise ParseError(f"expected a formula, found {val or 'end of input'!r}", pos)

    def expr() -> Formula:
        left = operand()
        op = None
        while peek()[0] == "sym" and peek()[1] in _OP_OF:
            _, sym, pos = take()
            this = _OP_OF[sym]
            if op is not None and this != op:
                raise ParseError("mixed operators need parentheses", pos)
            op = this
            left = Formula(op, left, operand())
        return left

    result = expr()
    take("end")
    return result
