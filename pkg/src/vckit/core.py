"""Domain types shared by every hypothesis class: points, labeled samples,
the 0-1 loss, and the outcome record that ERM oracles return.

Losses are exact rationals (mismatch count over sample size). Realizability
("is zero empirical loss achievable?") is therefore decidable without any
tolerance, and no epsilon appears anywhere on the loss path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence


class ContractViolation(ValueError):
    """A caller broke a documented precondition (bad lengths, bad ranges)."""


class DomainError(ValueError):
    """A sample point does not lie in the hypothesis class's domain."""


class OracleError(RuntimeError):
    """An ERM oracle failed internally (distinct from 'not realizable')."""


LabelVector = tuple[int, ...]


@dataclass(frozen=True)
class Point:
    """A domain point: either a real vector (continuous domains) or an
    index into a finite domain. Exactly one of the two is populated."""

    coords: Optional[tuple[float, ...]] = None
    index: Optional[int] = None

    def __post_init__(self):
        if (self.coords is None) == (self.index is None):
            raise ContractViolation("point must have coords xor index")
        if self.coords is not None:
            if len(self.coords) == 0:
                raise ContractViolation("coords must be non-empty")
            if not all(math.isfinite(c) for c in self.coords):
                raise ContractViolation(f"non-finite coordinate in {self.coords}")
        if self.index is not None and self.index < 0:
            raise ContractViolation("index must be non-negative")

    @classmethod
    def continuous(cls, *coords: float) -> "Point":
        return cls(coords=tuple(float(c) for c in coords))

    @classmethod
    def finite(cls, index: int) -> "Point":
        return cls(index=int(index))

    @property
    def is_finite_domain(self) -> bool:
        return self.index is not None

    @property
    def dim(self) -> int:
        if self.coords is None:
            raise ContractViolation("finite-domain point has no dimension")
        return len(self.coords)


@dataclass(frozen=True)
class LabeledSample:
    """An ordered sequence of (point, bit) pairs with pairwise-distinct
    points. Duplicates are rejected at construction: a duplicated point
    with conflicting labels is vacuously unrealizable and would silently
    bias the estimator toward "not shattered"."""

    points: tuple[Point, ...]
    labels: LabelVector

    def __post_init__(self):
        if len(self.points) == 0:
            raise ContractViolation("sample must contain at least one point")
        if len(self.points) != len(self.labels):
            raise ContractViolation(
                f"{len(self.points)} points but {len(self.labels)} labels"
            )
        if any(y not in (0, 1) for y in self.labels):
            raise ContractViolation(f"labels must be bits, got {self.labels}")
        if len(set(self.points)) != len(self.points):
            raise ContractViolation("sample points must be pairwise distinct")
        kinds = {p.is_finite_domain for p in self.points}
        if len(kinds) > 1:
            raise ContractViolation("sample mixes finite and continuous points")
        if not self.points[0].is_finite_domain:
            dims = {p.dim for p in self.points}
            if len(dims) > 1:
                raise ContractViolation(f"sample mixes dimensions {sorted(dims)}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Point, int]]) -> "LabeledSample":
        pts, labels = zip(*pairs)
        return cls(tuple(pts), tuple(int(y) for y in labels))

    @property
    def size(self) -> int:
        return len(self.points)

    def with_labels(self, labels: Sequence[int]) -> "LabeledSample":
        return LabeledSample(self.points, tuple(int(y) for y in labels))


def empirical_loss(predictions: Sequence[int], sample: LabeledSample) -> Fraction:
    """Fraction of sample points the predictions misclassify, as an exact
    rational. Raises on a length mismatch."""
    if len(predictions) != sample.size:
        raise ContractViolation(
            f"{len(predictions)} predictions for a sample of size {sample.size}"
        )
    mismatches = sum(1 for p, y in zip(predictions, sample.labels) if p != y)
    return Fraction(mismatches, sample.size)


@dataclass(frozen=True)
class ErmOutcome:
    """Result of one ERM oracle invocation.

    ``loss_numerator`` over ``sample_size`` is the achieved empirical loss.
    ``predictions``, when present, are the returned hypothesis evaluated on
    the sample points, and must be Hamming-consistent with the loss (the
    outcome is self-certifying; use :func:`certified_outcome` to construct
    one). ``budget_exhausted`` is set only when an iteration budget bound
    the computation, so a nonzero loss may then under-report the truth.
    ``extras`` carries class-specific diagnostics such as the separating
    weight vector.
    """

    loss_numerator: int
    sample_size: int
    predictions: Optional[LabelVector] = None
    budget_exhausted: bool = False
    extras: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.sample_size < 1:
            raise ContractViolation("sample_size must be >= 1")
        if not 0 <= self.loss_numerator <= self.sample_size:
            raise ContractViolation(
                f"loss numerator {self.loss_numerator} outside [0, {self.sample_size}]"
            )
        if self.predictions is not None and len(self.predictions) != self.sample_size:
            raise ContractViolation("predictions length differs from sample size")

    @property
    def loss(self) -> Fraction:
        return Fraction(self.loss_numerator, self.sample_size)

    @property
    def zero_loss(self) -> bool:
        return self.loss_numerator == 0


def certified_outcome(
    sample: LabeledSample,
    predictions: Sequence[int],
    *,
    budget_exhausted: bool = False,
    extras: Mapping[str, object] | None = None,
) -> ErmOutcome:
    """Build an outcome whose loss is computed from the predictions, so the
    self-certification invariant holds by construction."""
    preds = tuple(int(p) for p in predictions)
    mismatches = sum(1 for p, y in zip(preds, sample.labels) if p != y)
    return ErmOutcome(
        loss_numerator=mismatches,
        sample_size=sample.size,
        predictions=preds,
        budget_exhausted=budget_exhausted,
        extras=dict(extras) if extras else {},
    )


class HypothesisClass:
    """Contract every built-in hypothesis class implements.

    ``erm(sample)`` must be complete as a realizability certifier: whenever
    some hypothesis in the class fits the sample exactly, the oracle returns
    loss 0 with predictions equal to the labels (budgeted oracles may fall
    short only when their budget binds, and must say so via
    ``budget_exhausted``). Implementations are pure functions of their
    inputs; the shattering scan relies on that to run them concurrently.
    """

    name: str = "abstract"

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        raise NotImplementedError

    def describe(self) -> dict:
        """Flat summary for run reports."""
        return {"class": self.name}
