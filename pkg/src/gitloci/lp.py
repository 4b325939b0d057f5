"""Exact two-phase simplex over the rationals.

Bland's rule is used for both the entering and the leaving variable, so
the method terminates on degenerate problems without any perturbation.
Problem sizes in this package are tiny (tens of variables), so a dense
tableau is fine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(tab: list, obj: list, basis: list, r: int, c: int) -> None:
    row = tab[r]
    pv = row[c]
    if pv != 1:
        row = [x / pv for x in row]
        tab[r] = row
    support = [(j, x) for j, x in enumerate(row) if x]  # tableau rows are sparse
    for other in tab:
        if other is not row:
            f = other[c]
            if f:
                for j, x in support:
                    other[j] -= f * x
    f = obj[c]
    if f:
        for j, x in support:
            obj[j] -= f * x
    basis[r] = c


def _iterate(tab: list, obj: list, basis: list, ncols: int) -> str:
    while True:
        entering = next((j for j in range(ncols) if obj[j] < 0), None)
        if entering is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(tab):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, obj, basis, best[1], entering)


def simplex_standard(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence, start: Sequence | None = None) -> LPResult:
    """Minimize ``c.x`` subject to ``a_eq x = b_eq`` and ``x >= 0``.

    ``start`` may name, per row, a column that is the unit vector of that
    row (typically a slack); such rows need no artificial variable when
    their right-hand side is nonnegative.
    """
    n = len(c)
    c = [Fraction(x) for x in c]
    tab = []
    basis = []
    for k, (row, rhs) in enumerate(zip(a_eq, b_eq)):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        hint = start[k] if start is not None else None
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
            hint = None
        tab.append(row + [rhs])
        basis.append(hint)
    m = len(tab)
    if m == 0:
        if any(x < 0 for x in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    # phase 1: one artificial per row without a usable starting column
    need = [i for i in range(m) if basis[i] is None]
    width = n + len(need)
    for i, row in enumerate(tab):
        rhs = row.pop()
        row.extend(Fraction(int(i == k)) for k in need)
        row.append(rhs)
    for j, i in enumerate(need):
        basis[i] = n + j
    if need:
        obj = [Fraction(0)] * (width + 1)
        for i in need:
            row = tab[i]
            for j in range(n):
                obj[j] -= row[j]
            obj[-1] -= row[-1]
        _iterate(tab, obj, basis, width)
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)

        # drive remaining artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab):
            if basis[i] >= n:
                j = next((j for j in range(n) if tab[i][j] != 0), None)
                if j is None:
                    del tab[i]
                    del basis[i]
                    continue
                _pivot(tab, obj, basis, i, j)
            i += 1
        tab = [row[:n] + [row[-1]] for row in tab]

    obj = c + [Fraction(0)]
    for i, row in enumerate(tab):
        cb = c[basis[i]]
        if cb:
            obj = [a - cb * b for a, b in zip(obj, row)]
    if _iterate(tab, obj, basis, n) == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, row in enumerate(tab):
        x[basis[i]] = row[-1]
    return LPResult(OPTIMAL, tuple(x), -obj[-1])


def linprog(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    *,
    free: bool = False,
) -> LPResult:
    """Minimize ``c.x`` under ``a_ub x <= b_ub`` and ``a_eq x = b_eq``.

    Variables are nonnegative unless ``free`` is set, in which case they are
    unrestricted in sign (split internally as a difference of two
    nonnegative parts).
    """
    n = len(c)
    ub = len(a_ub)

    def expand(row):
        row = [Fraction(x) for x in row]
        return row + [-x for x in row] if free else row

    width = 2 * n if free else n
    rows = []
    rhs = []
    for row, b in zip(a_eq, b_eq):
        rows.append(expand(row) + [Fraction(0)] * ub)
        rhs.append(b)
    for k, (row, b) in enumerate(zip(a_ub, b_ub)):
        rows.append(expand(row) + [Fraction(int(k == j)) for j in range(ub)])
        rhs.append(b)
    cost = expand(c) + [Fraction(0)] * ub
    start = [None] * len(a_eq) + [width + k for k in range(ub)]
    res = simplex_standard(cost, rows, rhs, start)
    if not res.optimal:
        return res
    x = res.x[:width]
    if free:
        x = tuple(x[j] - x[n + j] for j in range(n))
    return LPResult(OPTIMAL, tuple(x), res.value)
