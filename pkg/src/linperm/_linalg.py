"""Gaussian elimination over F_p (plain ints) and over a generic field."""

from __future__ import annotations


def rank_mod_p(rows, p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        prow = [(x * inv) % p for x in a[rank]]
        a[rank] = prow
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], prow)]
        rank += 1
        if rank == len(a):
            break
    return rank


def inverse_mod_p(rows, p: int):
    """Inverse of a square matrix over F_p, or ``None`` if singular."""
    n = len(rows)
    a = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], p - 2, p)
        a[col] = [(x * inv) % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def pivot_columns_mod_p(rows, p: int):
    """Indices of a maximal set of independent columns (first-found order)."""
    a = [[x % p for x in row] for row in rows]
    ncols = len(a[0]) if a else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
    return pivots


def solve(F, A, b):
    """Solve ``A x = b`` over the field ``F``; ``A`` square and invertible.

    Returns ``None`` when ``A`` is singular.
    """
    n = len(A)
    a = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != F.zero), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = F.inv(a[col][col])
        a[col] = [F.mul(x, inv) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != F.zero:
                f = a[r][col]
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]
