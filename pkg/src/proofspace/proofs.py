"""Cut-free proof search for unit-only MALL, denotations, and proof complexes.

Sequents are one-sided and ordered; every rule may act at any position, so
exchange is implicit.  Every premise is strictly smaller than its conclusion,
which bounds the search.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

from .complex import Complex, Simplex, down_closure_complex
from .semantics import (BOT, ONE, PAR, PLUS, TENSOR, WITH, Formula, Point, STAR, interpret,
                        bool_with, gustave, inl, inr, pair)

Sequent = tuple[Formula, ...]
Denotation = frozenset  # of Point tuples, one coordinate per conclusion formula

__all__ = [
    "ProofSearch", "ProofSpace", "ProofTree", "SearchLimitError", "bool_with", "count_proofs", "denotation",
    "enumerate_proofs", "from_sexp", "gustave", "proofs_space", "witness_check",
]


class SearchLimitError(RuntimeError):
    """Sequent or proof set beyond the configured size guard."""


@dataclass(frozen=True)
class ProofTree:
    rule: str
    conclusion: Sequent
    pos: int | None = None
    split: tuple[int, ...] | None = None
    children: tuple["ProofTree", ...] = ()

    def to_sexp(self) -> str:
        parts = [self.rule]
        if self.pos is not None:
            parts.append(str(self.pos))
        if self.split is not None:
            parts.append("(" + " ".join(map(str, self.split)) + ")")
        parts += [c.to_sexp() for c in self.children]
        return "(" + " ".join(parts) + ")"

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def __str__(self) -> str:
        return self.to_sexp()


# ---------------------------------------------------------------- rule table

def _premises(seq: Sequent, mix: bool):
    """Yield ``(rule, pos, split, premise sequents)`` for every applicable rule."""
    n = len(seq)
    if n == 1 and seq[0].op == ONE:
        yield "one", None, None, ()
    for p, A in enumerate(seq):
        rest_l, rest_r = seq[:p], seq[p + 1:]
        if A.op == BOT:
            yield "bot", p, None, (rest_l + rest_r,)
        elif A.op == PLUS:
            yield "plusl", p, None, (rest_l + (A.left,) + rest_r,)
            yield "plusr", p, None, (rest_l + (A.right,) + rest_r,)
        elif A.op == WITH:
            yield "with", p, None, (rest_l + (A.left,) + rest_r, rest_l + (A.right,) + rest_r)
        elif A.op == PAR:
            yield "par", p, None, (rest_l + (A.left, A.right) + rest_r,)
        elif A.op == TENSOR:
            ctx = [i for i in range(n) if i != p]
            for left in _subsets(ctx):
                yield "tensor", p, left, (_tensor_side(seq, p, left, A.left),
                                          _tensor_side(seq, p, _complement(ctx, left), A.right))
    if mix and n >= 2:
        # the left premise always takes the first formula, so swapped
        # premises are not counted as a second proof
        idx = list(range(n))
        for left in _subsets(idx):
            if 0 < len(left) < n and left[0] == 0:
                right = _complement(idx, left)
                yield "mix", None, left, (tuple(seq[i] for i in left), tuple(seq[i] for i in right))


def _subsets(items: list[int]):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def _complement(items: list[int], part: tuple[int, ...]) -> tuple[int, ...]:
    s = set(part)
    return tuple(i for i in items if i not in s)


def _tensor_side(seq: Sequent, pos: int, ctx: tuple[int, ...], sub: Formula) -> Sequent:
    return tuple(sub if i == pos else seq[i] for i in sorted(ctx + (pos,)))


# ------------------------------------------------------ denotation transfer

def _combine(rule: str, seq: Sequent, pos, split, dens: tuple[Denotation, ...]) -> Denotation:
    """Denotation of the conclusion from the premises' denotations."""
    if rule == "one":
        return frozenset({(STAR,)})
    if rule == "bot":
        return frozenset(t[:pos] + (STAR,) + t[pos:] for t in dens[0])
    if rule in ("plusl", "plusr"):
        wrap = inl if rule == "plusl" else inr
        return frozenset(t[:pos] + (wrap(t[pos]),) + t[pos + 1:] for t in dens[0])
    if rule == "with":
        return frozenset([t[:pos] + (inl(t[pos]),) + t[pos + 1:] for t in dens[0]]
                         + [t[:pos] + (inr(t[pos]),) + t[pos + 1:] for t in dens[1]])
    if rule == "par":
        return frozenset(t[:pos] + (pair(t[pos], t[pos + 1]),) + t[pos + 2:] for t in dens[0])
    n = len(seq)
    if rule == "tensor":
        ctx = [i for i in range(n) if i != pos]
        left_idx = sorted(split + (pos,))
        right_idx = sorted(_complement(ctx, split) + (pos,))
        out = set()
        for t1 in dens[0]:
            for t2 in dens[1]:
                row = [None] * n
                for j, i in enumerate(left_idx):
                    row[i] = t1[j]
                for j, i in enumerate(right_idx):
                    row[i] = t2[j] if i != pos else pair(t1[left_idx.index(pos)], t2[j])
                out.add(tuple(row))
        return frozenset(out)
    if rule == "mix":
        left_idx = list(split)
        right_idx = list(_complement(list(range(n)), split))
        out = set()
        for t1 in dens[0]:
            for t2 in dens[1]:
                row = [None] * n
                for j, i in enumerate(left_idx):
                    row[i] = t1[j]
                for j, i in enumerate(right_idx):
                    row[i] = t2[j]
                out.add(tuple(row))
        return frozenset(out)
    raise ValueError(f"unknown rule {rule!r}")


def denotation(proof: ProofTree) -> Denotation:
    """Relational (equivalently coherent) denotation, computed bottom-up."""
    dens = tuple(denotation(c) for c in proof.children)
    return _combine(proof.rule, proof.conclusion, proof.pos, proof.split, dens)


def clique_of(den: Denotation) -> frozenset:
    """Points of a single-conclusion denotation."""
    return frozenset(t[0] for t in den)


# ------------------------------------------------------------------- search

@dataclass
class _Entry:
    count: int
    by_denotation: dict  # Denotation -> representative ProofTree


class ProofSearch:
    """Memoized exhaustive search; one instance per option set."""

    def __init__(self, mix: bool = False, max_size: int = 40, max_sequents: int = 200_000):
        self.mix = mix
        self.max_size = max_size
        self.max_sequents = max_sequents
        self._memo: dict[Sequent, _Entry] = {}
        self._opened = 0
        self._trees: dict[Sequent, list[ProofTree]] = {}

    @property
    def sequents_visited(self) -> int:
        return len(self._memo)

    def _guard(self, seq: Sequent):
        size = sum(A.size() for A in seq)
        if size > self.max_size:
            raise SearchLimitError(f"sequent size {size} exceeds the guard {self.max_size}")

    def entry(self, seq: Sequent) -> _Entry:
        seq = tuple(seq)
        hit = self._memo.get(seq)
        if hit is not None:
            return hit
        self._guard(seq)
        self._opened += 1
        if self._opened > self.max_sequents:
            raise SearchLimitError(f"more than {self.max_sequents} sequents visited")
        count = 0
        found: dict = {}
        for rule, pos, split, prems in _premises(seq, self.mix):
            subs = [self.entry(p) for p in prems]
            n = 1
            for s in subs:
                n *= s.count
            if not n:
                continue
            count += n
            for combo in itertools.product(*(list(s.by_denotation.items()) for s in subs)):
                den = _combine(rule, seq, pos, split, tuple(d for d, _ in combo))
                if den not in found:
                    found[den] = ProofTree(rule, seq, pos, split, tuple(t for _, t in combo))
        entry = _Entry(count, found)
        self._memo[seq] = entry
        return entry

    def all_trees(self, seq: Sequent, limit: int = 100_000) -> list[ProofTree]:
        seq = tuple(seq)
        total = self.entry(seq).count
        if total > limit:
            raise SearchLimitError(f"{total} proof trees exceed the limit {limit}")
        return self._all(seq)

    def _all(self, seq: Sequent) -> list[ProofTree]:
        if seq in self._trees:
            return self._trees[seq]
        out = []
        for rule, pos, split, prems in _premises(seq, self.mix):
            lists = [self._all(p) for p in prems]
            for kids in itertools.product(*lists):
                out.append(ProofTree(rule, seq, pos, split, kids))
        self._trees[seq] = out
        return out


def enumerate_proofs(seq: Iterable[Formula], mix: bool = False, dedup_by_denotation: bool = True,
                     max_size: int = 40) -> list[ProofTree]:
    """All cut-free proofs of ``⊢ seq``; with dedup, one per distinct denotation."""
    search = ProofSearch(mix=mix, max_size=max_size)
    seq = tuple(seq)
    if dedup_by_denotation:
        return list(search.entry(seq).by_denotation.values())
    return search.all_trees(seq)


def count_proofs(seq: Iterable[Formula], mix: bool = False, max_size: int = 40) -> int:
    """Number of raw proof trees, without building them."""
    return ProofSearch(mix=mix, max_size=max_size).entry(tuple(seq)).count


# ------------------------------------------------------------- proof spaces

@dataclass
class ProofSpace:
    formula: Formula
    mix: bool
    proofs: list[ProofTree]
    denotations: list[frozenset]
    raw_count: int
    complex: Complex
    unwitnessed: frozenset = field(default_factory=frozenset)


def proofs_space(A: Formula, mix: bool = False, max_size: int = 40) -> ProofSpace:
    """The proof complex of ``A``: down-closure of its proof denotations."""
    search = ProofSearch(mix=mix, max_size=max_size)
    entry = search.entry((A,))
    pairs = sorted(((clique_of(d), t) for d, t in entry.by_denotation.items()),
                   key=lambda dt: Simplex(dt[0]).sort_key)
    cliques = [c for c, _ in pairs]
    X = down_closure_complex(cliques)
    web = frozenset(interpret(A).web)
    return ProofSpace(A, mix, [t for _, t in pairs], cliques, entry.count, X, web - X.web)


def witness_check(ps: ProofSpace, s) -> ProofTree | None:
    """A proof whose denotation contains ``s``, if any."""
    s = frozenset(s)
    for clique, proof in zip(ps.denotations, ps.proofs):
        if s <= clique:
            return proof
    return None


# --------------------------------------------------------------- s-expressions

_SEXP_TOKEN = re.compile(r"\s*([()]|[a-z]+|\d+)")


def from_sexp(text: str, conclusion: Iterable[Formula], mix: bool = True) -> ProofTree:
    """Rebuild a proof of ``conclusion`` from :meth:`ProofTree.to_sexp` output.

    Raises ValueError when a step does not match an applicable rule.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad s-expression at {pos}")
        toks.append(m.group(1))
        pos = m.end()
    it = iter(toks)

    def parse_list():
        out = []
        for tok in it:
            if tok == "(":
                out.append(parse_list())
            elif tok == ")":
                return out
            else:
                out.append(int(tok) if tok.isdigit() else tok)
        raise ValueError("unbalanced s-expression")

    if next(it, None) != "(":
        raise ValueError("s-expression must start with '('")
    tree = parse_list()

    def build(node, seq: Sequent) -> ProofTree:
        rule, args = node[0], node[1:]
        p = args.pop(0) if args and isinstance(args[0], int) else None
        split = tuple(args.pop(0)) if args and isinstance(args[0], list) and \
            all(isinstance(x, int) for x in args[0]) and rule in ("tensor", "mix") else None
        for r, rp, rs, prems in _premises(seq, mix):
            if r == rule and rp == p and rs == split:
                if len(prems) != len(args):
                    raise ValueError(f"{rule} expects {len(prems)} premises")
                kids = tuple(build(a, q) for a, q in zip(args, prems))
                return ProofTree(rule, seq, p, split, kids)
        raise ValueError(f"rule {rule} pos={p} split={split} does not apply to {[str(f) for f in seq]}")

    return build(tree, tuple(conclusion))
