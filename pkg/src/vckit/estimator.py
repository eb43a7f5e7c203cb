"""Monte Carlo VC-dimension estimation with a Hoeffding-calibrated sample
size.

For each candidate size d the estimator draws m point sets of size d,
counts how many the class fails to shatter, and stops at the first d where
every drawn set fails: the reported dimension is then d - 1. The sample
size m = ceil(ln(2/delta) / (2 eps^2)) makes the observed failure frequency
an (eps, delta)-accurate estimate of its true probability *under the
configured sampling distribution* -- that distribution is part of the
answer's meaning, so it is carried into every report.

Known limitation, restated in report footers: when shattered sets exist
but have tiny probability under the sampler, all m draws can fail and the
dimension is underestimated. Small eps and delta shrink, but cannot
eliminate, that risk.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._scan import scan_lowest
from .core import ContractViolation, HypothesisClass, OracleError, Point
from .shattering import ShatterVerdict, shatters

SAMPLING_NOTE = (
    "A shattered set with tiny probability under the configured sampler can "
    "be missed by every draw, in which case the reported dimension is an "
    "underestimate; the certificate only bounds the frequency estimation "
    "error, not this event."
)


def hoeffding_sample_size(epsilon: float, delta: float) -> int:
    """Smallest m with 2*exp(-2*m*eps^2) <= delta, i.e. the ceiling of
    ln(2/delta) / (2 eps^2)."""
    if not 0 < epsilon < 1:
        raise ContractViolation(f"epsilon must be in (0, 1), got {epsilon}")
    if not 0 < delta < 1:
        raise ContractViolation(f"delta must be in (0, 1), got {delta}")
    t = math.log(2.0 / delta) / (2.0 * epsilon * epsilon)
    # A few ulps of slack so parameters whose bound is a whole number in
    # real arithmetic do not get pushed to the next integer by rounding.
    return max(1, math.ceil(t - 1e-12 * abs(t)))


@dataclass(frozen=True)
class Certificate:
    """The (epsilon, delta) accuracy contract and the sample size backing it."""

    epsilon: float
    delta: float
    sample_size_m: int

    def __post_init__(self):
        if self.sample_size_m != hoeffding_sample_size(self.epsilon, self.delta):
            raise ContractViolation("sample size does not match the certificate formula")

    @classmethod
    def from_params(cls, epsilon: float, delta: float) -> "Certificate":
        return cls(epsilon, delta, hoeffding_sample_size(epsilon, delta))


# ---------------------------------------------------------------------------
# Domain samplers
# ---------------------------------------------------------------------------

class DomainSampler:
    """Deterministic point-set source: the set is a pure function of
    (seed, d, draw_index), so results do not depend on the iteration order
    or worker count."""

    cardinality: Optional[int] = None  # None for continuous domains

    def sample(self, d: int, draw_index: int) -> tuple[Point, ...]:
        raise NotImplementedError

    def draws_at(self, d: int, m: int) -> int:
        """Number of draws the estimator runs at size d (m by default)."""
        return m

    def describe(self) -> dict:
        return {"sampler": type(self).__name__}


def _substream(seed: int, d: int, draw_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, d, draw_index])


@dataclass(frozen=True)
class UniformBox(DomainSampler):
    """Uniform draws from an axis-aligned box in R^n."""

    dimension: int
    lo: float = -1.0
    hi: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be >= 1")
        if not self.lo < self.hi:
            raise ContractViolation(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.seed < 0:
            raise ContractViolation("seed must be non-negative")

    def sample(self, d: int, draw_index: int) -> tuple[Point, ...]:
        rng = _substream(self.seed, d, draw_index)
        while True:
            block = rng.uniform(self.lo, self.hi, size=(d, self.dimension))
            pts = tuple(Point.continuous(*row) for row in block)
            if len(set(pts)) == d:  # exact duplicates have probability zero
                return pts

    def describe(self) -> dict:
        return {
            "sampler": "uniform-box",
            "dimension": self.dimension,
            "lo": self.lo,
            "hi": self.hi,
        }


@dataclass(frozen=True)
class FiniteUniform(DomainSampler):
    """Uniform d-subsets (without replacement) of {0, ..., cardinality-1}."""

    n_points: int
    seed: int = 0

    def __post_init__(self):
        if self.n_points < 1:
            raise ContractViolation("domain cardinality must be >= 1")
        if self.seed < 0:
            raise ContractViolation("seed must be non-negative")

    @property
    def cardinality(self) -> int:
        return self.n_points

    def sample(self, d: int, draw_index: int) -> tuple[Point, ...]:
        if d > self.n_points:
            raise ContractViolation(f"cannot draw {d} distinct points from {self.n_points}")
        rng = _substream(self.seed, d, draw_index)
        idx = rng.choice(self.n_points, size=d, replace=False)
        return tuple(Point.finite(int(i)) for i in idx)

    def describe(self) -> dict:
        return {"sampler": "finite-uniform", "cardinality": self.n_points}


def _unrank_combination(n: int, k: int, rank: int) -> tuple[int, ...]:
    # Lexicographic unranking of k-subsets of range(n).
    combo = []
    x = 0
    for slot in range(k, 0, -1):
        while True:
            count = math.comb(n - x - 1, slot - 1)
            if rank < count:
                combo.append(x)
                x += 1
                break
            rank -= count
            x += 1
    return tuple(combo)


@dataclass(frozen=True)
class ExhaustiveFinite(DomainSampler):
    """Every d-subset of a finite domain exactly once, in lexicographic
    order. Degenerates the estimator into exhaustive search, so its answer
    matches the exact brute force whenever the oracles are exact."""

    n_points: int
    subset_cap: int = 1_000_000

    def __post_init__(self):
        if self.n_points < 1:
            raise ContractViolation("domain cardinality must be >= 1")

    @property
    def cardinality(self) -> int:
        return self.n_points

    def draws_at(self, d: int, m: int) -> int:
        total = math.comb(self.n_points, d)
        if total > self.subset_cap:
            raise ContractViolation(
                f"{total} subsets of size {d} exceed the exhaustive cap {self.subset_cap}"
            )
        return total

    def sample(self, d: int, draw_index: int) -> tuple[Point, ...]:
        total = math.comb(self.n_points, d)
        if not 0 <= draw_index < total:
            raise ContractViolation(f"draw index {draw_index} out of {total} subsets")
        return tuple(Point.finite(i) for i in _unrank_combination(self.n_points, d, draw_index))

    def describe(self) -> dict:
        return {"sampler": "exhaustive", "cardinality": self.n_points}


# ---------------------------------------------------------------------------
# The d-loop
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DepthStats:
    """Per-d record: planned draws m, unshattered count z_m, how many of the
    unshattered verdicts were unresolved (budget-limited), and whether an
    early break left z_m a lower bound."""

    d: int
    m: int
    z_m: int
    unresolved: int
    elapsed_s: float
    zm_is_lower_bound: bool
    draws_run: int


@dataclass(frozen=True)
class VcEstimate:
    """Final answer of the estimation loop. ``vc`` is None when the loop
    exhausted d_max without certifying an upper bound (the infinite
    marker)."""

    vc: Optional[int]
    per_d: tuple[DepthStats, ...]
    certificate: Certificate
    seed: int
    terminated_at_dmax: bool

    @property
    def is_infinite(self) -> bool:
        return self.vc is None


class EstimationAborted(RuntimeError):
    """An oracle failed mid-run; carries the per-d history completed so far."""

    def __init__(self, message: str, per_d: tuple[DepthStats, ...]):
        super().__init__(message)
        self.per_d = per_d


def run_depth(
    cls: HypothesisClass,
    sampler: DomainSampler,
    d: int,
    m: int,
    *,
    workers: int = 1,
    early_break: bool = True,
) -> DepthStats:
    """Evaluate one d-level: draw point sets and count shattering failures.

    With ``early_break`` the scan stops at the first shattered draw (the
    stopping rule z_m == m is already decided), reporting z_m as a lower
    bound over the prefix of draws actually run.
    """
    started = time.perf_counter()
    draws = sampler.draws_at(d, m)

    def evaluate(i: int) -> ShatterVerdict:
        return shatters(cls, sampler.sample(d, i), workers=1)

    def is_shattered(v: ShatterVerdict) -> bool:
        return v.shattered

    if early_break:
        hit, results = scan_lowest(draws, evaluate, is_shattered, workers, keep_all=True)
    else:
        hit = None
        _, results = scan_lowest(
            draws, evaluate, lambda v: False, workers, keep_all=True
        )

    if early_break and hit is not None:
        prefix = range(hit)  # draws before the first shattered one all failed
        z_m = hit
        unresolved = sum(1 for i in prefix if results[i].unresolved)
        draws_run = hit + 1
        lower_bound = draws_run < draws
    else:
        z_m = sum(1 for v in results.values() if not v.shattered)
        unresolved = sum(
            1 for v in results.values() if (not v.shattered) and v.unresolved
        )
        draws_run = draws
        lower_bound = False

    return DepthStats(
        d=d,
        m=draws,
        z_m=z_m,
        unresolved=unresolved,
        elapsed_s=time.perf_counter() - started,
        zm_is_lower_bound=lower_bound,
        draws_run=draws_run,
    )


def estimate_vcdim(
    cls: HypothesisClass,
    sampler: DomainSampler,
    epsilon: float,
    delta: float,
    d_max: int = 32,
    *,
    seed: Optional[int] = None,
    workers: int = 1,
    early_break: bool = True,
) -> VcEstimate:
    """The full estimation loop: ascend d until every draw fails to shatter,
    then report d - 1; report the infinite marker if d_max is exhausted."""
    if d_max < 1:
        raise ContractViolation("d_max must be >= 1")
    certificate = Certificate.from_params(epsilon, delta)
    m = certificate.sample_size_m
    if seed is None:
        seed = getattr(sampler, "seed", 0)
    history: list[DepthStats] = []
    for d in range(1, d_max + 1):
        if sampler.cardinality is not None and d > sampler.cardinality:
            # No d distinct points exist, so "no set of size d is shattered"
            # holds with certainty; record it without sampling.
            history.append(
                DepthStats(
                    d=d, m=m, z_m=m, unresolved=0, elapsed_s=0.0,
                    zm_is_lower_bound=False, draws_run=0,
                )
            )
            return VcEstimate(
                vc=d - 1,
                per_d=tuple(history),
                certificate=certificate,
                seed=seed,
                terminated_at_dmax=False,
            )
        try:
            stats = run_depth(
                cls, sampler, d, m, workers=workers, early_break=early_break
            )
        except OracleError as exc:
            raise EstimationAborted(str(exc), tuple(history)) from exc
        history.append(stats)
        if stats.z_m == stats.m:
            return VcEstimate(
                vc=d - 1,
                per_d=tuple(history),
                certificate=certificate,
                seed=seed,
                terminated_at_dmax=False,
            )
    return VcEstimate(
        vc=None,
        per_d=tuple(history),
        certificate=certificate,
        seed=seed,
        terminated_at_dmax=True,
    )
