"""Decide whether a hypothesis class shatters a point set.

A set of d points is shattered exactly when every one of the 2^d labelings
is realizable, and realizability of one labeling is exactly "the ERM oracle
reaches zero empirical loss on it". The scan walks labelings in a fixed
lexicographic order and stops at the first failure, so the reported witness
labeling is reproducible; under a worker pool the reduction returns the
lexicographically smallest failure, which makes the verdict identical for
any worker count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ._scan import scan_lowest
from .classes import ConceptMatrix, restricted_patterns
from .core import (
    ContractViolation,
    DomainError,
    ErmOutcome,
    HypothesisClass,
    LabelVector,
    LabeledSample,
    OracleError,
    Point,
)

MAX_SET_SIZE = 62  # 2^d must fit machine arithmetic; practical sizes are far lower


def labeling_at(d: int, rank: int) -> LabelVector:
    """The rank-th labeling of d points in lexicographic order, where the
    first point's label is the most significant position."""
    return tuple((rank >> (d - 1 - i)) & 1 for i in range(d))


def enumerate_labelings(d: int) -> Iterator[LabelVector]:
    """All 2^d labelings, lexicographic, first point most significant."""
    if not 1 <= d <= MAX_SET_SIZE:
        raise ContractViolation(f"set size must be in [1, {MAX_SET_SIZE}], got {d}")
    for rank in range(1 << d):
        yield labeling_at(d, rank)


@dataclass(frozen=True)
class ShatterVerdict:
    """Outcome of a shattering decision.

    ``witness_labeling`` is present exactly when not shattered: it is the
    lexicographically first labeling no hypothesis realizes (or, for
    budget-limited oracles, the first the oracle failed to realize).
    ``unresolved`` marks verdicts that rest on a budget-exhausted oracle
    outcome and so could be false negatives. ``erm_calls`` counts oracle
    invocations of the canonical sequential scan, which keeps it identical
    across worker counts.
    """

    shattered: bool
    witness_labeling: Optional[LabelVector]
    erm_calls: int
    unresolved: bool
    elapsed_s: float

    def __post_init__(self):
        if self.shattered and (self.witness_labeling is not None or self.unresolved):
            raise ContractViolation("shattered verdicts carry no witness")
        if not self.shattered and self.witness_labeling is None:
            raise ContractViolation("unshattered verdicts need a witness labeling")
        if self.erm_calls < 1:
            raise ContractViolation("at least one oracle call is required")


def shatters(
    cls: HypothesisClass,
    points: Sequence[Point],
    workers: int = 1,
    *,
    complement_closed: bool = False,
) -> ShatterVerdict:
    """Run the all-labelings ERM scan on ``points``.

    With ``complement_closed`` the caller asserts the class contains the
    complement of each of its hypotheses; then a labeling and its bitwise
    complement are realizable together, and only the half of the labelings
    starting with 0 is scanned. Off by default because correctness must not
    depend on an unverified class property.
    """
    started = time.perf_counter()
    pts = tuple(points)
    d = len(pts)
    if not 1 <= d <= MAX_SET_SIZE:
        raise ContractViolation(f"set size must be in [1, {MAX_SET_SIZE}], got {d}")
    if len(set(pts)) != d:
        raise ContractViolation("points must be pairwise distinct")

    total = 1 << (d - 1 if complement_closed else d)

    def evaluate(rank: int) -> ErmOutcome:
        labeling = labeling_at(d, rank)
        try:
            return cls.erm(LabeledSample(pts, labeling))
        except OracleError as exc:
            exc.labeling = labeling
            raise

    def is_failure(outcome: ErmOutcome) -> bool:
        return not outcome.zero_loss

    hit, results = scan_lowest(total, evaluate, is_failure, workers)
    elapsed = time.perf_counter() - started
    if hit is None:
        return ShatterVerdict(
            shattered=True,
            witness_labeling=None,
            erm_calls=total,
            unresolved=False,
            elapsed_s=elapsed,
        )
    witness = results[hit]
    return ShatterVerdict(
        shattered=False,
        witness_labeling=labeling_at(d, hit),
        erm_calls=hit + 1,
        unresolved=witness.budget_exhausted,
        elapsed_s=elapsed,
    )


def shatters_matrix_reference(matrix: ConceptMatrix, columns: Sequence[int]) -> bool:
    """Independent finite-class oracle: the column set is shattered iff the
    rows restricted to it produce all 2^d distinct patterns."""
    cols = tuple(columns)
    if len(cols) == 0:
        raise ContractViolation("need at least one column")
    if len(set(cols)) != len(cols):
        raise ContractViolation("column indices must be distinct")
    if any(not 0 <= c < matrix.n_cols for c in cols):
        raise DomainError(f"column index out of range for {matrix.n_cols} columns")
    patterns = set(restricted_patterns(matrix, cols))
    return len(patterns) == 1 << len(cols)
