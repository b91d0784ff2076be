"""Integer diagonalization kernels.

The int64 kernel runs compiled under numba or as plain numpy code (see
``_accel``).  It aborts as soon as an entry would leave the safe range, and
the caller then redoes the reduction with Python integers.
"""
from math import gcd

import numpy as np

from ._accel import USE_NUMBA, compile_kernel

# entries stay <= 2**31 before every row/column operation, so q*a fits in int64
LIMIT = 1 << 31
OVERFLOW = -1


def diagonalize_int64(A):
    """Reduce ``A`` in place to diagonal form by unimodular operations.

    Returns ``(r, d)``: the first ``r`` entries of ``d`` are the absolute
    nonzero diagonal entries, not yet normalized to a divisibility chain.
    ``r == OVERFLOW`` signals that int64 is not wide enough.
    """
    m, n = A.shape
    d = np.zeros(min(m, n), dtype=np.int64)
    r = 0
    t = 0
    while t < m and t < n:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                a = abs(A[i, j])
                if a != 0 and (best == 0 or a < best):
                    best = a
                    bi = i
                    bj = j
                    if a == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            tmp = A[t, :].copy()
            A[t, :] = A[bi, :]
            A[bi, :] = tmp
        if bj != t:
            tmp = A[:, t].copy()
            A[:, t] = A[:, bj]
            A[:, bj] = tmp
        while True:
            clean = True
            p = A[t, t]
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // p
                    A[i, t:] -= q * A[t, t:]
                    if np.abs(A[i, t:]).max() > LIMIT:
                        return OVERFLOW, d
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // p
                    A[t:, j] -= q * A[t:, t]
                    if np.abs(A[t:, j]).max() > LIMIT:
                        return OVERFLOW, d
                    if A[t, j] != 0:
                        clean = False
            if clean:
                break
            # smallest remainder in the pivot row/column becomes the new pivot
            best = 0
            bi = -1
            bj = -1
            for i in range(t + 1, m):
                a = abs(A[i, t])
                if a != 0 and (best == 0 or a < best):
                    best = a
                    bi = i
                    bj = t
            for j in range(t + 1, n):
                a = abs(A[t, j])
                if a != 0 and (best == 0 or a < best):
                    best = a
                    bi = t
                    bj = j
            if bi != t:
                tmp = A[t, :].copy()
                A[t, :] = A[bi, :]
                A[bi, :] = tmp
            if bj != t:
                tmp = A[:, t].copy()
                A[:, t] = A[:, bj]
                A[:, bj] = tmp
        d[r] = abs(A[t, t])
        r += 1
        t += 1
    return r, d


diagonalize_int64_nb = compile_kernel(diagonalize_int64)


def diagonalize_exact(rows: list[list[int]]) -> list[int]:
    """Same reduction on Python integers; never overflows."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    d = []
    t = 0

    def swap_in(i, j):
        if i != t:
            A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]

    while t < m and t < n:
        piv = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (piv is None or abs(a) < piv[0]):
                    piv = (abs(a), i, j)
        if piv is None:
            break
        swap_in(piv[1], piv[2])
        while True:
            clean = True
            prow = A[t]
            p = prow[t]
            for i in range(t + 1, m):
                row = A[i]
                if row[t]:
                    q = row[t] // p
                    for c in range(t, n):
                        if prow[c]:
                            row[c] -= q * prow[c]
                    if row[t]:
                        clean = False
            for j in range(t + 1, n):
                if prow[j]:
                    q = prow[j] // p
                    for r in range(t, m):
                        if A[r][t]:
                            A[r][j] -= q * A[r][t]
                    if prow[j]:
                        clean = False
            if clean:
                break
            cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cands += [(abs(prow[j]), t, j) for j in range(t + 1, n) if prow[j]]
            _, bi, bj = min(cands)
            swap_in(bi, bj)
        d.append(abs(A[t][t]))
        t += 1
    return d


def invariant_factors(diagonal) -> list[int]:
    """Normalize nonzero diagonal entries into a divisibility chain."""
    ds = sorted(int(x) for x in diagonal if x)
    ones = [x for x in ds if x == 1]
    rest = [x for x in ds if x != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    return ones + sorted(rest)


def diagonal_of(dense, backend: str | None = None) -> list[int]:
    """Nonzero diagonal of a diagonalization of ``dense``.

    ``backend`` is one of ``"numba"``, ``"numpy"``, ``"exact"``; by default
    numba is used when enabled, with exact arithmetic as the overflow fallback.
    """
    rows = [list(map(int, r)) for r in dense] if not isinstance(dense, np.ndarray) else None
    if backend is None:
        backend = "numba" if USE_NUMBA and diagonalize_int64_nb is not None else "numpy"
    if backend == "exact":
        return diagonalize_exact(rows if rows is not None else dense.tolist())
    if rows is not None:
        big = any(abs(x) > LIMIT for r in rows for x in r)
        if big:
            return diagonalize_exact(rows)
        A = np.array(rows, dtype=np.int64).reshape(len(rows), len(rows[0]) if rows else 0)
    else:
        if dense.size and np.abs(dense).max() > LIMIT:
            return diagonalize_exact(dense.tolist())
        A = np.array(dense, dtype=np.int64)
    work = A.copy()
    if backend == "numba":
        if diagonalize_int64_nb is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        r, d = diagonalize_int64_nb(work)
    elif backend == "numpy":
        r, d = diagonalize_int64(work)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if r == OVERFLOW:
        return diagonalize_exact(A.tolist())
    return [int(x) for x in d[:r]]
