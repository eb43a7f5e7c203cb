"""Exact VC dimension of a finite class given as a concept matrix, by
enumerating column combinations. This is the ground truth the randomized
estimator is validated against.

The search ascends d and stops at the first d with no shattered d-subset,
which is valid because shattering is anti-monotone under taking subsets.
Rows are deduplicated up front and restrictions are bit-packed, so each
subset test is one pass over the distinct rows.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .classes import ConceptMatrix
from .core import ContractViolation

_BITMAP_LIMIT = 20  # beyond this, the distinct-pattern count uses a set


def _subset_shattered(rows: tuple[int, ...], cols: tuple[int, ...]) -> bool:
    d = len(cols)
    need = 1 << d
    if len(rows) < need:
        return False
    if d <= _BITMAP_LIMIT:
        seen = 0
        count = 0
        for r in rows:
            pattern = 0
            for i, c in enumerate(cols):
                pattern |= ((r >> c) & 1) << i
            bit = 1 << pattern
            if not seen & bit:
                seen |= bit
                count += 1
                if count == need:
                    return True
        return False
    patterns = {
        sum(((r >> c) & 1) << i for i, c in enumerate(cols)) for r in rows
    }
    return len(patterns) == need


def exact_vcdim_matrix(matrix: ConceptMatrix) -> int:
    """Largest d such that some d-subset of columns is shattered; 0 when no
    single column takes both values across the rows."""
    rows = matrix.dedup().rows
    # A shattered d-subset needs 2^d distinct rows, so d is capped by both
    # the column count and log2 of the distinct-row count.
    limit = min(matrix.n_cols, max(0, len(rows).bit_length() - 1))
    vc = 0
    for d in range(1, limit + 1):
        if any(_subset_shattered(rows, cols) for cols in combinations(range(matrix.n_cols), d)):
            vc = d
        else:
            break
    return vc


def exact_shattered_witness(
    matrix: ConceptMatrix, d: int
) -> Optional[tuple[int, ...]]:
    """Lexicographically first shattered d-subset of columns, or None."""
    if not 1 <= d <= matrix.n_cols:
        raise ContractViolation(
            f"subset size must be in [1, {matrix.n_cols}], got {d}"
        )
    rows = matrix.dedup().rows
    for cols in combinations(range(matrix.n_cols), d):
        if _subset_shattered(rows, cols):
            return cols
    return None
