"""Dense exact linear algebra over any field whose elements support + - * / and == 0."""
from __future__ import annotations

from typing import Callable, Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None, order: Sequence[int] | None = None):
    """Reduced row echelon form.

    ``order`` lists the columns in the order they are tried as pivots
    (default left to right).  Returns ``(rows, pivots)`` with zero rows dropped.
    """
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    order = range(ncols) if order is None else order
    pivots = []
    r = 0
    for c in order:
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        row = M[r]
        if piv != 1:
            row = [x / piv for x in row]
            M[r] = row
        nz = [j for j, x in enumerate(row) if x != 0]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f != 0:
                    Mi = M[i]
                    for j in nz:
                        Mi[j] = Mi[j] - f * row[j]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[1])


def det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0 * M[0][0]
            M[k], M[p] = M[p], M[k]
            sign = -sign
        akk = M[k][k]
        for i in range(k + 1, n):
            aik = M[i][k]
            Mi = M[i]
            Mk = M[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * akk - aik * Mk[j]) / prev
            Mi[k] = 0 * akk
        prev = akk
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def nullspace(rows, ncols: int):
    """Basis of ``{x : rows . x = 0}``."""
    R, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, p in zip(R, piv):
            v[p] = -r[f]
        basis.append(v)
    return basis


def solve_pivots(rows, pivots: Sequence[int]):
    """Gauss-Jordan with prescribed pivot columns, or ``None`` if they are dependent."""
    M = [list(r) for r in rows]
    if len(M) != len(pivots):
        return None
    for r, c in enumerate(pivots):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            return None
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        row = [x / piv for x in M[r]]
        M[r] = row
        nz = [j for j, x in enumerate(row) if x != 0]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                Mi = M[i]
                for j in nz:
                    Mi[j] = Mi[j] - f * row[j]
    return M


def weighted_echelon(rows, col_weight: Sequence, val: Callable, tiebreak_col: Callable | None = None):
    """Echelon form with complete pivoting on ``val(entry) + col_weight[col]``.

    Pivots minimize the weighted valuation over the remaining submatrix, so
    all multipliers lie in the valuation ring and the pivot columns minimize
    ``val(det A^J) + sum of col weights over J``.  Ties go to the column with
    the larger ``tiebreak_col`` key (default: larger index), then the smaller
    row.  Returns ``(pivot_cols, rows)`` where ``rows`` is the Gauss-Jordan
    form normalized to the identity on the pivot columns, in pivot order.
    """
    M = [list(r) for r in rows]
    if not M:
        return [], []
    key = tiebreak_col or (lambda c: c)
    vals = [[None if x == 0 else val(x) + col_weight[j] for j, x in enumerate(r)] for r in M]
    active = list(range(len(M)))
    used = set()
    order = []
    while active:
        best = None
        for i in active:
            for j, b in enumerate(vals[i]):
                if b is None or j in used:
                    continue
                k = (b, -key(j), i)
                if best is None or k < best[0]:
                    best = (k, i, j)
        if best is None:
            break
        _, i, c = best
        active.remove(i)
        used.add(c)
        order.append((i, c))
        row = M[i]
        piv = row[c]
        nz = [j for j, x in enumerate(row) if x != 0]
        for r in active:
            f = M[r][c]
            if f == 0:
                continue
            m = f / piv
            Mr = M[r]
            vr = vals[r]
            for j in nz:
                x = Mr[j] - m * row[j]
                Mr[j] = x
                vr[j] = None if x == 0 else val(x) + col_weight[j]
    out = []
    pivots = []
    for i, c in order:
        out.append(M[i])
        pivots.append(c)
    out = solve_pivots(out, pivots)
    return pivots, out
