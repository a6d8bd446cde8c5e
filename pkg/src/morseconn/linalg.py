"""Exact integer and mod-2 matrix routines for small boundary matrices."""
from __future__ import annotations

import numpy as np

RINGS = ("z", "z2")


def check_ring(ring: str) -> str:
    if ring not in RINGS:
        raise ValueError(f"ring must be one of {RINGS}, got {ring!r}")
    return ring


def reduce(mat: np.ndarray, ring: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.int64)
    return mat % 2 if ring == "z2" else mat


def invariant_factors(mat) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (positive, dividing)."""
    a = [[int(x) for x in row] for row in np.asarray(mat, dtype=object)]
    m = len(a)
    n = len(a[0]) if m else 0
    factors = []
    t = 0
    while t < m and t < n:
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # diagonal must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t onto the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        factors.append(abs(a[t][t]))
        t += 1
    return factors


def rank(mat, ring: str = "z") -> int:
    """Rank over Q (ring 'z') or over GF(2)."""
    mat = np.asarray(mat, dtype=np.int64)
    if mat.size == 0:
        return 0
    if ring == "z":
        return len(invariant_factors(mat))
    a = (mat % 2).astype(np.uint8)
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def is_invertible(mat, ring: str) -> bool:
    """Square and invertible over the ring (unimodular over Z)."""
    mat = np.asarray(mat, dtype=np.int64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        return False
    n = mat.shape[0]
    if n == 0:
        return True
    if ring == "z2":
        return rank(mat, "z2") == n
    factors = invariant_factors(mat)
    return len(factors) == n and all(f == 1 for f in factors)


def equal(a, b, ring: str) -> bool:
    a = reduce(a, ring)
    b = reduce(b, ring)
    return a.shape == b.shape and bool(np.array_equal(a, b))
