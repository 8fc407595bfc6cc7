"""Exact phase-1 simplex for ``{A u = b, u >= 0}`` on integer data.

The tableau is kept fraction-free (Bareiss style): every stored entry is an
integer and the true value is ``entry / det`` where ``det`` is the determinant
of the current basis.  Divisions are exact, so no rationals are allocated in
the pivot loop.  Pivoting follows Bland's rule (lowest entering index, lowest
basic index on ratio ties), which guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LpResult:
    feasible: bool
    u: tuple[Fraction, ...] | None
    infeasibility: Fraction  # optimal phase-1 objective; 0 iff feasible
    pivots: int


def phase_one(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> LpResult:
    """Decide ``A u = b, u >= 0`` exactly; returns the terminal basic solution when feasible."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    if len(rhs) != m:
        raise ValueError("rhs length does not match row count")
    if m == 0:
        return LpResult(True, (), Fraction(0), 0)

    # tableau rows: [a_0 .. a_{ncols-1}, b]; rows flipped so b >= 0
    tab: list[list[int]] = []
    for r, b in zip(rows, rhs):
        if len(r) != ncols:
            raise ValueError("ragged constraint matrix")
        if b < 0:
            tab.append([-v for v in r] + [-b])
        else:
            tab.append(list(r) + [b])
    # artificial j sits in row j; basis ids >= ncols denote artificials
    basis = [ncols + i for i in range(m)]
    # objective row: reduced costs of structurals are -(column sums); last entry -(sum b)
    obj = [-sum(row[c] for row in tab) for c in range(ncols + 1)]
    det = 1
    pivots = 0

    while True:
        q = -1
        for c in range(ncols):
            if obj[c] < 0:
                q = c
                break
        if q < 0:
            break
        p = -1
        for i in range(m):
            a = tab[i][q]
            if a > 0:
                if p < 0:
                    p = i
                    continue
                # ratio b_i/a vs b_p/a_p, cross-multiplied (both denominators positive)
                lhs = tab[i][ncols] * tab[p][q]
                rhs_ = tab[p][ncols] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[p]):
                    p = i
        if p < 0:
            # phase-1 objective is bounded below by 0, so an improving column always has a pivot
            raise AssertionError("unbounded phase-1 ray")
        prow = tab[p]
        pq = prow[q]
        for i in range(m):
            if i == p:
                continue
            row = tab[i]
            iq = row[q]
            if iq == 0:
                tab[i] = [(pq * v) // det for v in row]
            else:
                tab[i] = [(pq * v - iq * w) // det for v, w in zip(row, prow)]
        oq = obj[q]
        obj = [(pq * v - oq * w) // det for v, w in zip(obj, prow)]
        det = pq
        basis[p] = q
        pivots += 1

    infeas = Fraction(-obj[ncols], det)
    if infeas != 0:
        return LpResult(False, None, infeas, pivots)
    u = [Fraction(0)] * ncols
    for i, var in enumerate(basis):
        if var < ncols:
            u[var] = Fraction(tab[i][ncols], det)
    return LpResult(True, tuple(u), Fraction(0), pivots)
