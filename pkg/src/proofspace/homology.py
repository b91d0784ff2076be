"""Integer simplicial homology.

Oriented simplices use the ascending vertex order.  Homology is the
non-reduced one, so ``H_0`` is free on the connected components.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import _kernels
from .complex import Complex, ComplexError, Simplex, SimplicialMap, SizeGuardError, vertex_key

MAX_SIMPLICES = 400_000
MAX_DENSE_ENTRIES = 60_000_000


class IntegerMatrix:
    """Sparse matrix of Python integers; zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], int] | None = None):
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if v:
                self.entries[i, j] = int(v)

    @classmethod
    def from_dense(cls, dense) -> "IntegerMatrix":
        dense = [list(r) for r in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, r in enumerate(dense) for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def to_numpy(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            out[i, j] = v
        return out

    def column(self, j: int) -> dict[int, int]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, acc)

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        acc = dict(self.entries)
        for ij, v in other.entries.items():
            acc[ij] = acc.get(ij, 0) - v
        return IntegerMatrix(self.rows, self.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerMatrix):
            return self.shape == other.shape and self.entries == other.entries
        return NotImplemented

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols}, {self.to_dense()})"


def permutation_sign(keys) -> int:
    """Sign of the permutation sorting ``keys`` (distinct) ascending."""
    keys = list(keys)
    inv = 0
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[j] < keys[i]:
                inv += 1
    return -1 if inv % 2 else 1


def boundary_matrix(X: Complex, k: int) -> IntegerMatrix:
    """Matrix of the boundary from k-chains to (k-1)-chains."""
    if k < 1:
        raise ValueError("boundary_matrix needs k >= 1")
    cols = X.index_simplices(k)
    rows = X.index_simplices(k - 1)
    row_of = {s: i for i, s in enumerate(rows)}
    entries = {}
    for j, s in enumerate(cols):
        for i in range(len(s)):
            entries[row_of[s[:i] + s[i + 1:]], j] = -1 if i % 2 else 1
    return IntegerMatrix(len(rows), len(cols), entries)


@dataclass
class ChainComplexRep:
    """Ordered simplex bases and boundary matrices of a complex."""

    complex: Complex
    bases: list[list[Simplex]]
    boundaries: dict[int, IntegerMatrix]

    def rank(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    def boundary(self, k: int) -> IntegerMatrix:
        """∂_k, including the zero maps at either end."""
        if k in self.boundaries:
            return self.boundaries[k]
        return IntegerMatrix(self.rank(k - 1), self.rank(k))


def chain_complex(X: Complex) -> ChainComplexRep:
    bases = [X.simplices_of_dim(k) for k in range(X.dim + 1)]
    bounds = {k: boundary_matrix(X, k) for k in range(1, X.dim + 1)}
    return ChainComplexRep(X, bases, bounds)


def smith_normal_form(M, backend: str | None = None) -> tuple[list[int], int]:
    """Invariant factors (a divisibility chain) and rank of an integer matrix."""
    if isinstance(M, IntegerMatrix):
        if M.rows == 0 or M.cols == 0 or M.is_zero():
            return [], 0
        dense = M.to_numpy() if _fits(M) else M.to_dense()
    else:
        dense = M
    diag = _kernels.diagonal_of(dense, backend)
    factors = _kernels.invariant_factors(diag)
    return factors, len(factors)


def _fits(M: IntegerMatrix) -> bool:
    return all(abs(v) <= _kernels.LIMIT for v in M.entries.values())


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(x < 2 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"bad torsion coefficients {t!r}")
        object.__setattr__(self, "torsion", t)

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def check_size(X: Complex, max_simplices: int = MAX_SIMPLICES) -> None:
    """Raise SizeGuardError if X has too many simplices for dense reduction."""
    bound = sum(2 ** len(f) - 1 for f in X.facets)
    if bound > max_simplices:
        raise SizeGuardError(f"up to {bound} simplices, above the bound {max_simplices}")
    counts = [len(X.index_simplices(k)) for k in range(X.dim + 1)]
    worst = max((a * b for a, b in zip(counts, counts[1:])), default=0)
    if worst > MAX_DENSE_ENTRIES:
        raise SizeGuardError(f"a boundary matrix would have {worst} entries, above {MAX_DENSE_ENTRIES}")


def homology_groups(X: Complex, backend: str | None = None,
                    max_simplices: int = MAX_SIMPLICES) -> list[HomologyGroup]:
    """``H_k(X)`` for k = 0..dim X."""
    if not X.web:
        return []
    check_size(X, max_simplices)
    dim = X.dim
    counts = [len(X.index_simplices(k)) for k in range(dim + 1)]
    ranks = [0] * (dim + 2)
    factors: list[list[int]] = [[] for _ in range(dim + 2)]
    for k in range(1, dim + 1):
        factors[k], ranks[k] = smith_normal_form(boundary_matrix(X, k), backend)
    out = []
    for k in range(dim + 1):
        betti = counts[k] - ranks[k] - ranks[k + 1]
        out.append(HomologyGroup(betti, tuple(f for f in factors[k + 1] if f >= 2)))
    return out


def pad_groups(groups: list[HomologyGroup], upto: int) -> list[HomologyGroup]:
    """Extend with trivial groups so that degrees 0..upto are present."""
    return list(groups) + [HomologyGroup(0)] * max(0, upto + 1 - len(groups))


def same_homology(a: list[HomologyGroup], b: list[HomologyGroup]) -> bool:
    n = max(len(a), len(b)) - 1
    return pad_groups(a, n) == pad_groups(b, n)


def homology_report(name: str, X: Complex, groups: list[HomologyGroup] | None = None) -> dict:
    groups = homology_groups(X) if groups is None else groups
    return {
        "space": name,
        "dim": X.dim,
        "groups": [{"k": k, "betti": g.betti, "torsion": list(g.torsion)} for k, g in enumerate(groups)],
        "size": size_report(X),
    }


def size_report(X: Complex) -> dict:
    return {"web": len(X.web), "facets": len(X.facets), "max_facet": X.max_facet}


# ---------------------------------------------------------------- chain maps

@dataclass
class ChainMapRep:
    source: ChainComplexRep
    target: ChainComplexRep
    maps: dict[int, IntegerMatrix] = field(default_factory=dict)

    def __getitem__(self, k: int) -> IntegerMatrix:
        if k in self.maps:
            return self.maps[k]
        return IntegerMatrix(self.target.rank(k), self.source.rank(k))


def chain_map_of_simplicial_map(f, X: Complex, Y: Complex) -> ChainMapRep:
    """Chain map induced by a simplicial map; degenerate images go to 0."""
    mapping = f.mapping if isinstance(f, SimplicialMap) else dict(f)
    SimplicialMap(X, Y, mapping)  # raises on a non-simplicial map
    src, tgt = chain_complex(X), chain_complex(Y)
    maps = {}
    for k in range(X.dim + 1):
        row_of = {s: i for i, s in enumerate(Y.index_simplices(k))}
        entries = {}
        for j, s in enumerate(X.index_simplices(k)):
            img = [mapping[X.vertices[i]] for i in s]
            if len(set(img)) < len(img):
                continue
            keys = [vertex_key(v) for v in img]
            idx = tuple(sorted(Y.index[v] for v in img))
            entries[row_of[idx], j] = permutation_sign(keys)
        maps[k] = IntegerMatrix(tgt.rank(k), src.rank(k), entries)
    return ChainMapRep(src, tgt, maps)


@dataclass
class ChainMapCheck:
    ok: bool
    violations: list[tuple[int, Simplex]]

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first(self) -> tuple[int, Simplex] | None:
        return self.violations[0] if self.violations else None


def is_chain_map(phi, source: ChainComplexRep, target: ChainComplexRep) -> ChainMapCheck:
    """Check φ_k ∂_{k+1} = ∂'_{k+1} φ_{k+1} for every k.

    Violations are reported as ``(k, s)`` with ``s`` the (k+1)-simplex of the
    source whose column differs.
    """
    maps = phi.maps if isinstance(phi, ChainMapRep) else dict(phi)
    top = max([len(source.bases), len(target.bases)] + [k + 1 for k in maps])

    def get(k):
        m = maps.get(k)
        if m is None:
            return IntegerMatrix(target.rank(k), source.rank(k))
        if m.shape != (target.rank(k), source.rank(k)):
            raise ValueError(f"phi_{k} has shape {m.shape}, expected {(target.rank(k), source.rank(k))}")
        return m

    for k in maps:
        get(k)
    violations = []
    for k in range(top):
        diff = get(k) @ source.boundary(k + 1) - target.boundary(k + 1) @ get(k + 1)
        bad = sorted({j for _, j in diff.entries})
        violations += [(k, source.bases[k + 1][j]) for j in bad]
    return ChainMapCheck(not violations, violations)


def _snf_with_transforms(rows: list[list[int]], m: int, n: int):
    """Diagonalize exactly, returning (diag, P, Pinv, Q, Qinv) with P A Q = D."""
    A = [list(r) for r in rows]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Pinv = [r[:] for r in P]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    Qinv = [r[:] for r in Q]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]
        for r in Pinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def row_op(i, t, q):  # R_i -= q R_t
        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
        P[i] = [a - q * b for a, b in zip(P[i], P[t])]
        for r in Pinv:
            r[t] += q * r[i]

    def col_op(j, t, q):  # C_j -= q C_t
        for r in A:
            r[j] -= q * r[t]
        for r in Q:
            r[j] -= q * r[t]
        Qinv[t] = [a + q * b for a, b in zip(Qinv[t], Qinv[j])]

    diag = []
    t = 0
    while t < m and t < n:
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // A[t][t])
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    clean = clean and not A[t][j]
            if clean:
                break
            cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        diag.append(A[t][t])
        t += 1
    return diag, P, Pinv, Q, Qinv


def _matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


@dataclass
class _HomologyBasis:
    """Generators of H_k and the coordinate map for cycles."""

    kernel_rank_offset: int
    Qinv: list[list[int]]
    P2: list[list[int]]
    moduli: list[int]  # 0 for a free generator, d >= 2 for Z/d
    keep: list[int]    # positions in the reduced coordinates that are nontrivial
    generators: list[list[int]]

    def coordinates(self, cycle: list[int]) -> list[int]:
        z = _matvec(self.Qinv, cycle)[self.kernel_rank_offset:]
        y = _matvec(self.P2, z) if self.P2 else []
        out = []
        for pos, mod in zip(self.keep, self.moduli):
            out.append(y[pos] % mod if mod else y[pos])
        return out


def _homology_basis(C: ChainComplexRep, k: int) -> _HomologyBasis:
    n = C.rank(k)
    dk = C.boundary(k).to_dense() if n else []
    m_rows = C.rank(k - 1)
    if m_rows and n:
        diag, _, _, Q, Qinv = _snf_with_transforms(dk, m_rows, n)
    else:
        diag = []
        Q = [[int(i == j) for j in range(n)] for i in range(n)]
        Qinv = [r[:] for r in Q]
    r = len(diag)
    Z = [row[r:] for row in Q]  # n x z kernel basis
    z = n - r
    up = C.boundary(k + 1)
    cols = up.cols
    # coordinates of the boundaries in the kernel basis
    Cm = [[0] * cols for _ in range(z)]
    dense_up = up.to_dense()
    for j in range(cols):
        colv = [dense_up[i][j] for i in range(n)]
        coords = _matvec(Qinv, colv)[r:]
        for i in range(z):
            Cm[i][j] = coords[i]
    if z and cols:
        diag2, P2, P2inv, _, _ = _snf_with_transforms(Cm, z, cols)
    else:
        diag2 = []
        P2 = [[int(i == j) for j in range(z)] for i in range(z)]
        P2inv = [r[:] for r in P2]
    moduli, keep, gens = [], [], []
    order = [i for i, d in enumerate(diag2) if abs(d) >= 2] + list(range(len(diag2), z))
    for i in order:
        mod = abs(diag2[i]) if i < len(diag2) else 0
        g_z = [P2inv[a][i] for a in range(z)]
        gens.append([sum(Z[row][a] * g_z[a] for a in range(z)) for row in range(n)])
        moduli.append(mod)
        keep.append(i)
    return _HomologyBasis(r, Qinv, P2, moduli, keep, gens)


def homology_generators(C: ChainComplexRep, k: int) -> list[tuple[list[int], int]]:
    """Cycle representatives of H_k with their orders (0 = infinite order)."""
    b = _homology_basis(C, k)
    return list(zip(b.generators, b.moduli))


def induced_homology_map(phi: ChainMapRep, k: int) -> list[list[int]]:
    """Matrix of H_k φ in the generator bases of :func:`homology_generators`.

    Rows index target generators, columns source generators; rows of torsion
    generators are reduced modulo their order.
    """
    check = is_chain_map(phi, phi.source, phi.target)
    if not check:
        raise ValueError(f"not a chain map; first violation at {check.first!r}")
    src = _homology_basis(phi.source, k)
    tgt = _homology_basis(phi.target, k)
    mk = phi[k].to_dense()
    cols = []
    for g in src.generators:
        image = _matvec(mk, g) if mk else [0] * phi.target.rank(k)
        cols.append(tgt.coordinates(image))
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt.generators))]


__all__ = [
    "ChainComplexRep", "ChainMapCheck", "ChainMapRep", "ComplexError", "HomologyGroup", "IntegerMatrix",
    "SizeGuardError", "check_size",
    "boundary_matrix", "chain_complex", "chain_map_of_simplicial_map", "homology_generators",
    "homology_groups", "homology_report", "induced_homology_map", "is_chain_map", "pad_groups",
    "permutation_sign", "same_homology", "size_report", "smith_normal_form",
]
