"""Exact rational linear solving by fraction-free Gaussian elimination.

The workhorse behind invariant rewriting: systems are typically tall
(one row per monomial, one column per candidate invariant product) and
either have a unique solution or are inconsistent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["solve_exact_linear", "UnderdeterminedError"]


class UnderdeterminedError(ValueError):
    """The system is consistent but the solution is not unique."""


def solve_exact_linear(
    matrix: Sequence[Sequence[Fraction | int]],
    rhs: Sequence[Fraction | int],
) -> list[Fraction] | None:
    """Solve A x = b exactly over Q.

    Returns the unique solution as a list of Fractions, or None when the
    system is inconsistent.  Raises UnderdeterminedError when solutions
    exist but are not unique (a free column survived elimination).
    """
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if len(rows) != len(matrix) or len(rows) != len(rhs):
        raise ValueError("matrix/rhs size mismatch")
    n_rows = len(rows)
    n_cols = len(matrix[0]) if n_rows else 0
    for row in matrix:
        if len(row) != n_cols:
            raise ValueError("ragged matrix")

    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == n_rows:
            break

    for i in range(r, n_rows):
        if rows[i][n_cols] != 0:
            return None
    if len(pivot_cols) < n_cols:
        raise UnderdeterminedError(
            f"rank {len(pivot_cols)} < {n_cols} unknowns"
        )
    solution = [Fraction(0)] * n_cols
    for i, c in enumerate(pivot_cols):
        solution[c] = rows[i][n_cols]
    return solution
