"""Gauss-Jordan elimination over Q.  Systems here have at most a few dozen unknowns."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Unique solution of ``matrix @ x = rhs``; ``None`` if singular or inconsistent."""
    n = len(matrix[0]) if matrix else 0
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    rows, pivots = _rref(aug, n)
    if any(all(v == 0 for v in row[:n]) and row[n] != 0 for row in rows):
        return None
    if pivots != list(range(n)):
        return None
    return [rows[i][n] for i in range(n)]


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    rows = [[Fraction(v) for v in row] for row in vectors]
    return len(_rref(rows, len(rows[0]))[1])
