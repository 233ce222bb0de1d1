"""Dense linear algebra over F_p and Smith normal form over Z."""

from __future__ import annotations

import numpy as np


def rref_mod_p(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns ``(R, pivot_columns)``."""
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(m, p: int) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def quotient_map_mod_p(relmat, ngens: int, p: int) -> np.ndarray:
    """Matrix ``Q`` (ngens x d) of a surjection ``F_p^ngens -> F_p^ngens / rowspace(relmat)``.

    Row ``j`` of ``Q`` is the image of the ``j``-th unit vector; the kernel of
    ``v -> v @ Q`` is exactly the row space of ``relmat``.
    """
    relmat = np.asarray(relmat, dtype=np.int64)
    if relmat.size and ngens:
        rref, pivots = rref_mod_p(relmat, p)
    else:
        rref, pivots = np.zeros((0, ngens), np.int64), []
    free = [j for j in range(ngens) if j not in set(pivots)]
    q = np.zeros((ngens, len(free)), dtype=np.int64)
    for k, j in enumerate(free):
        q[j, k] = 1
    for row, pc in zip(rref, pivots):
        q[pc] = (-row[free]) % p
    return q


def smith_normal_form(m) -> tuple[list[int], list[list[int]]]:
    """Diagonal of the Smith form of an integer matrix and the column transform.

    Returns ``(diag, V)`` with ``U @ M @ V = D`` for some unimodular ``U``;
    ``diag`` has one entry per column of ``M`` (zeros mark free summands of the
    cokernel ``Z^n / rowspace(M)``).  Exact Python integers throughout.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_op(dst, src, k):  # column dst += k * column src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        col_swap(t, j)
        while True:
            done = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        done = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        if a[t][t] < 0:
            a[t][t] = -a[t][t]
            # flip row sign: rows do not touch V
        t += 1
    diag = [abs(a[k][k]) if k < rows else 0 for k in range(cols)]
    return diag, v
