"""Exact integer matrix reductions: Hermite and Smith normal forms, kernels.

Everything here works on lists of Python ints so that intermediate entries
never overflow. Inputs may be numpy arrays or nested sequences; outputs are
numpy arrays with ``dtype=object``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


def _as_rows(A) -> tuple[list[list[int]], int, int]:
    arr = np.asarray(A, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    m, n = arr.shape
    return [[int(x) for x in row] for row in arr], m, n


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _to_array(rows: list[list[int]], m: int, n: int) -> np.ndarray:
    out = np.zeros((m, n), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def hermite_rows(A, ncols_pivot: int | None = None) -> np.ndarray:
    """Row-style Hermite normal form of ``A`` with zero rows removed.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``. When ``ncols_pivot`` is given only the first that many
    columns are used for pivoting; the remaining columns are carried along
    (this is how augmented systems such as ``[B | I]`` are reduced).
    """
    rows, m, n = _as_rows(A)
    limit = n if ncols_pivot is None else ncols_pivot
    r = 0
    pivots: list[tuple[int, int]] = []
    for c in range(limit):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][c]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[best] = rows[best], rows[r]
            p = rows[r][c]
            clean = True
            for i in range(r + 1, m):
                a = rows[i][c]
                if a:
                    q = a // p
                    if q:
                        pr = rows[r]
                        rows[i] = [x - q * y for x, y in zip(rows[i], pr)]
                    if rows[i][c]:
                        clean = False
            if clean:
                break
        if r < m and rows[r][c]:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            p = rows[r][c]
            for i in range(r):
                q = rows[i][c] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            pivots.append((r, c))
            r += 1
    if ncols_pivot is None:
        kept = [row for row in rows if any(row)]
    else:
        kept = rows
    return _to_array(kept, len(kept), n)


def row_lattice_equal(A, B) -> bool:
    """True when the integer row spans of ``A`` and ``B`` coincide."""
    ha, hb = hermite_rows(A), hermite_rows(B)
    return ha.shape == hb.shape and bool(np.all(ha == hb))


def left_kernel(B) -> np.ndarray:
    """Basis (as rows) of ``{x in Z^m : x @ B == 0}``; the basis is saturated."""
    rows, m, n = _as_rows(B)
    aug = [row + ident for row, ident in zip(rows, _identity(m))]
    red = hermite_rows(_to_array(aug, m, n + m), ncols_pivot=n)
    basis = [list(red[i, n:]) for i in range(red.shape[0]) if not any(red[i, :n])]
    return _to_array(basis, len(basis), m)


def right_kernel(A) -> np.ndarray:
    """Basis (as rows) of ``{x : A @ x == 0}``."""
    return left_kernel(np.asarray(A, dtype=object).T)


def smith_normal_form(A, *, left: bool = True, right: bool = True,
                      right_inverse: bool = False):
    """Smith normal form ``U @ A @ V == D``.

    ``D`` is diagonal with non-negative entries ``d_1 | d_2 | ...`` followed by
    zeros; ``U`` and ``V`` are unimodular. Returns ``(U, D, V)``; when
    ``right_inverse`` is set the inverse of ``V`` is appended as a fourth item.
    Transforms that were not requested come back as ``None``.
    """
    rows, m, n = _as_rows(A)
    U = _identity(m) if left else None
    V = _identity(n) if right else None
    Vinv = _identity(n) if right_inverse else None

    def row_add(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        rows[dst] = [x + q * y for x, y in zip(rows[dst], rows[src])]
        if U is not None:
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def row_swap(i: int, j: int) -> None:
        rows[i], rows[j] = rows[j], rows[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def col_add(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        for row in rows:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]
        if Vinv is not None:
            Vinv[src] = [x - q * y for x, y in zip(Vinv[src], Vinv[dst])]

    def col_swap(i: int, j: int) -> None:
        for row in rows:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
        if Vinv is not None:
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = rows[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = rows[t][t]
            for i in range(t + 1, m):
                if rows[i][t]:
                    row_add(i, t, -(rows[i][t] // p))
            for j in range(t + 1, n):
                if rows[t][j]:
                    col_add(j, t, -(rows[t][j] // p))
            cand = [(abs(rows[i][t]), i, None) for i in range(t + 1, m) if rows[i][t]]
            cand += [(abs(rows[t][j]), None, j) for j in range(t + 1, n) if rows[t][j]]
            if cand:
                _, i, j = min(cand, key=lambda c: c[0])
                if i is not None:
                    row_swap(t, i)
                else:
                    col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if rows[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if rows[t][t] < 0:
            rows[t] = [-x for x in rows[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]

    out = (
        _to_array(U, m, m) if U is not None else None,
        _to_array(rows, m, n),
        _to_array(V, n, n) if V is not None else None,
    )
    if right_inverse:
        return out + (_to_array(Vinv, n, n),)
    return out


def elementary_divisors(A) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``A``."""
    _, D, _ = smith_normal_form(A, left=False, right=False)
    k = min(D.shape)
    return [int(D[i, i]) for i in range(k) if D[i, i]]


def solve_integer(A, b: Sequence[int]) -> np.ndarray | None:
    """An integer ``x`` with ``A @ x == b``, or ``None`` when there is none."""
    A = np.asarray(A, dtype=object)
    b = np.asarray(b, dtype=object)
    U, D, V = smith_normal_form(A)
    c = U.dot(b)
    m, n = D.shape
    y = np.zeros(n, dtype=object)
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return V.dot(y)
