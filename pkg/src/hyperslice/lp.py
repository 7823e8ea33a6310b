"""Exact-rational simplex for packing LPs.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``, so the origin is
a feasible starting vertex and no phase one is needed. Bland's rule keeps
the method from cycling. Everything is a ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple      # primal, one entry per column
    y: tuple      # dual, one entry per row


def solve_packing(A, b, c, max_pivots: int | None = None) -> LPSolution:
    """Maximise ``c.x`` subject to ``A x <= b``, ``x >= 0``.

    ``A`` is a list of rows (sequences of numbers). Raises ``ValueError`` on a
    negative right-hand side or an unbounded objective.
    """
    m = len(A)
    ncols = len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be non-negative")
    F = Fraction
    width = ncols + m
    # rows: coefficients over structural + slack columns, then rhs
    rows = []
    for i, row in enumerate(A):
        if len(row) != ncols:
            raise ValueError("row length does not match objective length")
        r = [F(a) for a in row] + [F(0)] * m + [F(b[i])]
        r[ncols + i] = F(1)
        rows.append(r)
    basis = [ncols + i for i in range(m)]
    # reduced costs c_j - c_B B^-1 A_j; starts at c since slacks have zero cost
    z = [F(cj) for cj in c] + [F(0)] * m
    obj = F(0)
    pivots = 0
    while True:
        enter = next((j for j in range(width) if z[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ValueError("objective is unbounded")
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            rows[leave] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                r = rows[i]
                for j in nz:
                    r[j] -= f * prow[j]
        f = z[enter]
        for j in nz:
            if j < width:
                z[j] -= f * prow[j]
        obj += f * prow[-1]
        basis[leave] = enter
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise RuntimeError("pivot limit reached")
    x = [F(0)] * ncols
    for i, var in enumerate(basis):
        if var < ncols:
            x[var] = rows[i][-1]
    y = tuple(-z[ncols + i] for i in range(m))
    return LPSolution(obj, tuple(x), y)


def check_certificate(A, b, c, sol: LPSolution) -> bool:
    """Primal feasibility, dual feasibility and equal objective values."""
    x, y = sol.x, sol.y
    if any(v < 0 for v in x) or any(v < 0 for v in y):
        return False
    for i, row in enumerate(A):
        if sum(a * xj for a, xj in zip(row, x)) > b[i]:
            return False
    for j in range(len(c)):
        if sum(A[i][j] * y[i] for i in range(len(A))) < c[j]:
            return False
    primal = sum(cj * xj for cj, xj in zip(c, x))
    dual = sum(bi * yi for bi, yi in zip(b, y))
    return primal == dual == sol.value
