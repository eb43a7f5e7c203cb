"""Small exact (rational) linear-algebra helpers: null spaces and square
solves over Fractions. Inputs are tiny (tens of rows), so plain Gaussian
elimination is the right tool."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column of the RREF."""
    work = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(work)
    n_cols = len(work[0]) if work else 0
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(n_rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivot_cols.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n_cols) if c not in pivot_cols):
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -work[i][free]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular rational system exactly."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]
