"""Exact rational linear programming.

Problems have the form ``max c.x  s.t.  A x <= b`` with ``x`` free.  They are
solved through the dual ``min b.y  s.t.  A^T y = c, y >= 0``, whose tableau
has only ``len(x)`` rows; in this package that is the ambient dimension of
a polyhedron, never more than a handful.  Pivoting uses Bland's rule, so
the method terminates on degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .linalg import rref

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass
class LPResult:
    status: str
    value: mpq | None = None
    x: list | None = None        # primal optimum
    y: list | None = None        # dual multipliers, one per row of A


def _pivot(T, r, c):
    row = T[r]
    p = row[c]
    if p != 1:
        row = [x / p for x in row]
        T[r] = row
    nz = [j for j, x in enumerate(row) if x != 0]
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][c]
        if f != 0:
            Ti = T[i]
            for j in nz:
                Ti[j] = Ti[j] - f * row[j]


def _simplex(T, basis, cost, allowed):
    """Minimize ``cost`` over the tableau ``T`` (last column = rhs).  Returns False if unbounded."""
    ncol = len(T[0]) - 1
    while True:
        cb = [cost[j] for j in basis]
        enter = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j]
            for i, Ti in enumerate(T):
                if Ti[j] != 0 and cb[i] != 0:
                    r -= cb[i] * Ti[j]
            if r < 0:
                enter = j
                break
        if enter is None:
            return True
        best = None
        for i, Ti in enumerate(T):
            a = Ti[enter]
            if a > 0:
                ratio = Ti[ncol] / a
                k = (ratio, basis[i])
                if best is None or k < best[0]:
                    best = (k, i)
        if best is None:
            return False
        i = best[1]
        _pivot(T, i, enter)
        basis[i] = enter


def solve_dual_form(G, h, cost):
    """``min cost.y  s.t.  G y = h, y >= 0``.

    Returns ``(status, y, basis)``; linearly redundant rows of ``G`` are
    dropped along the way.
    """
    n = len(G)
    m = len(cost)
    T = []
    for i in range(n):
        row = [mpq(x) for x in G[i]]
        rhs = mpq(h[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [mpq(0)] * n
        art[i] = mpq(1)
        T.append(row + art + [rhs])
    basis = [m + i for i in range(n)]
    ph1 = [mpq(0)] * m + [mpq(1)] * n
    _simplex(T, basis, ph1, range(m + n))
    if sum(T[i][-1] for i in range(n) if basis[i] >= m) != 0:
        return INFEASIBLE, None, None
    # drive zero-level artificials out of the basis, dropping redundant rows
    drop = []
    for i in range(n):
        if basis[i] >= m:
            j = next((j for j in range(m) if T[i][j] != 0), None)
            if j is None:
                drop.append(i)
            else:
                _pivot(T, i, j)
                basis[i] = j
    kept = [i for i in range(n) if i not in drop]
    T = [T[i] for i in kept]
    basis = [basis[i] for i in kept]
    full_cost = [mpq(c) for c in cost] + [mpq(0)] * n
    if not _simplex(T, basis, full_cost, range(m)):
        return UNBOUNDED, None, None
    y = [mpq(0)] * m
    for i, j in enumerate(basis):
        y[j] = T[i][-1]
    return OPTIMAL, y, basis


def _primal_from_basis(A, b, basis, n):
    """Solve ``A_j . x = b_j`` for basic rows j (free directions set to 0)."""
    rows = [[mpq(x) for x in A[j]] + [mpq(b[j])] for j in basis]
    R, piv = rref(rows, n + 1)
    x = [mpq(0)] * n
    for r, p in zip(R, piv):
        if p == n:
            raise ArithmeticError("inconsistent basic system")
        x[p] = r[n]
    return x


def lp_max(c, A, b) -> LPResult:
    """``max c.x  s.t.  A x <= b``."""
    n = len(c)
    m = len(A)
    if m == 0:
        if all(x == 0 for x in c):
            return LPResult(OPTIMAL, mpq(0), [mpq(0)] * n, [])
        return LPResult(UNBOUNDED)
    G = [[A[j][i] for j in range(m)] for i in range(n)]
    status, y, basis = solve_dual_form(G, c, b)
    if status == UNBOUNDED:
        return LPResult(INFEASIBLE)
    if status == INFEASIBLE:
        feas = lp_max([0] * n, A, b)
        return LPResult(INFEASIBLE if feas.status == INFEASIBLE else UNBOUNDED)
    x = _primal_from_basis(A, b, basis, n)
    value = sum((mpq(b[j]) * y[j] for j in range(m)), mpq(0))
    return LPResult(OPTIMAL, value, x, y)


def feasible_point(A, b, n):
    """A point with ``A x <= b`` or ``None``."""
    res = lp_max([0] * n, A, b)
    return res.x if res.status == OPTIMAL else None
