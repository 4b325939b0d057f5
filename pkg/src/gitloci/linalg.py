"""Exact rational linear algebra on lists of :class:`~fractions.Fraction`."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple  # tuple[Fraction, ...]


def vec(xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """A basis of ``{x : row . x = 0 for every row}``."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(m, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_square(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Solve ``a x = b`` for square ``a``; ``None`` when ``a`` is singular."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = rref(aug, n)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in m)
