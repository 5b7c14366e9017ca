"""Exact rational linear algebra: echelon forms, rank, nullspace.

Elimination runs fraction-free on integer rows (each row is scaled to a
primitive integer vector first, and kept primitive by dividing out the gcd
after every update).  Pivoting is deterministic: the first column with a
nonzero entry, taking the smallest row index.  The final reduced form is
normalized to Fractions, so it is the unique RREF of the input.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

__all__ = ["rref", "rank", "nullspace", "row_space_equal", "solve_unique"]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return row


def _integer_rows(matrix: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in matrix:
        fr = [Fraction(x) for x in row]
        m = 1
        for x in fr:
            m = lcm(m, x.denominator)
        out.append(_primitive([int(x * m) for x in fr]))
    return out


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and pivot columns; zero rows are dropped."""
    rows = _integer_rows(matrix)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(len(rows)):
            if i == r or not rows[i][col]:
                continue
            a = rows[i][col]
            rows[i] = _primitive([p * x - a * y for x, y in zip(rows[i], rows[r])])
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    reduced = []
    for i, col in enumerate(pivots):
        p = rows[i][col]
        reduced.append([Fraction(x, p) for x in rows[i]])
    return reduced, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column, in column order.

    Each basis vector has a 1 in its free column and zeros in the other
    free columns.  ``ncols`` is needed when the matrix has no rows.
    """
    if ncols is None:
        if not matrix:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(matrix[0])
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(matrix)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def row_space_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """True iff the two sets of row vectors span the same space."""
    if not a or not b:
        return rank(a) == 0 if a else (rank(b) == 0 if b else True)
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))


def solve_unique(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve the square, invertible system M x = rhs exactly."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("system is singular or inconsistent")
    return [red[i][n] for i in range(n)]
