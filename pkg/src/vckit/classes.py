"""Built-in hypothesis classes and their ERM oracles.

Thresholds, intervals and rectangles are solved by direct enumeration of
candidate cut positions, so their minima are exact. Half-spaces come in two
flavours: an LP-feasibility oracle whose zero/nonzero verdicts are decided
in exact rational arithmetic, and a Rosenblatt perceptron that certifies
realizable samples constructively. Finite classes given as a 0-1 concept
matrix are solved by scanning all rows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .core import (
    ContractViolation,
    DomainError,
    ErmOutcome,
    HypothesisClass,
    LabeledSample,
    OracleError,
    certified_outcome,
)
from . import _linalg, simplex


# ---------------------------------------------------------------------------
# Concept matrices (finite classes over finite domains)
# ---------------------------------------------------------------------------

class MatrixParseError(ContractViolation):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ConceptMatrix:
    """0-1 matrix of a finite class: rows are concepts, columns are domain
    points. Rows are bit-packed with bit ``j`` holding column ``j``.
    Duplicate rows are legal (they do not change the VC dimension);
    :meth:`dedup` canonicalizes when callers want distinct concepts."""

    rows: tuple[int, ...]
    n_cols: int

    def __post_init__(self):
        if self.n_cols < 1 or len(self.rows) < 1:
            raise ContractViolation("matrix needs at least one row and one column")
        limit = 1 << self.n_cols
        if any(not 0 <= r < limit for r in self.rows):
            raise ContractViolation("packed row exceeds the declared column count")

    @classmethod
    def from_bits(cls, bit_rows: Sequence[Sequence[int]]) -> "ConceptMatrix":
        if not bit_rows:
            raise ContractViolation("matrix needs at least one row")
        n_cols = len(bit_rows[0])
        packed = []
        for row in bit_rows:
            if len(row) != n_cols:
                raise ContractViolation("ragged matrix rows")
            if any(b not in (0, 1) for b in row):
                raise ContractViolation(f"matrix entries must be bits, got {row}")
            packed.append(sum(b << j for j, b in enumerate(row)))
        return cls(tuple(packed), n_cols)

    @classmethod
    def from_text(cls, text: str) -> "ConceptMatrix":
        """Parse the plain-text format: a ``rows cols`` header line, then one
        line of '0'/'1' characters per row."""
        lines = text.splitlines()
        if not lines:
            raise MatrixParseError("empty input", 1)
        header = lines[0].split()
        if len(header) != 2:
            raise MatrixParseError("header must be two integers: rows cols", 1)
        try:
            n_rows, n_cols = int(header[0]), int(header[1])
        except ValueError:
            raise MatrixParseError(f"bad header {lines[0]!r}", 1) from None
        if n_rows < 1 or n_cols < 1:
            raise MatrixParseError("row and column counts must be positive", 1)
        packed = []
        for i in range(n_rows):
            lineno = i + 2
            if lineno - 1 >= len(lines):
                raise MatrixParseError(f"expected {n_rows} rows, found {i}", lineno)
            row = lines[lineno - 1].strip()
            if len(row) != n_cols:
                raise MatrixParseError(
                    f"row has {len(row)} columns, expected {n_cols}", lineno
                )
            if set(row) - {"0", "1"}:
                raise MatrixParseError("row contains characters outside 0/1", lineno)
            packed.append(sum((c == "1") << j for j, c in enumerate(row)))
        for extra in lines[n_rows + 1:]:
            if extra.strip():
                raise MatrixParseError("trailing content after last row", n_rows + 2)
        return cls(tuple(packed), n_cols)

    @classmethod
    def from_file(cls, path) -> "ConceptMatrix":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_text(fh.read())

    def to_text(self) -> str:
        lines = [f"{self.n_rows} {self.n_cols}"]
        for r in self.rows:
            lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(self.n_cols)))
        return "\n".join(lines) + "\n"

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def dedup(self) -> "ConceptMatrix":
        """Distinct rows, first occurrence order preserved."""
        return ConceptMatrix(tuple(dict.fromkeys(self.rows)), self.n_cols)


@lru_cache(maxsize=None)
def restricted_patterns(matrix: ConceptMatrix, cols: tuple[int, ...]) -> tuple[int, ...]:
    """Each row restricted to ``cols``, packed with bit i = column cols[i]."""
    return tuple(
        sum(((r >> c) & 1) << i for i, c in enumerate(cols)) for r in matrix.rows
    )


def pack_bits(bits: Sequence[int]) -> int:
    return sum(b << i for i, b in enumerate(bits))


def unpack_bits(value: int, width: int) -> tuple[int, ...]:
    return tuple((value >> i) & 1 for i in range(width))


# ---------------------------------------------------------------------------
# One-dimensional classes
# ---------------------------------------------------------------------------

def _require_dim(sample: LabeledSample, n: int, name: str):
    if sample.points[0].is_finite_domain:
        raise DomainError(f"{name} needs continuous points")
    if sample.points[0].dim != n:
        raise DomainError(f"{name} needs dimension {n}, got {sample.points[0].dim}")


@dataclass(frozen=True)
class Thresholds(HypothesisClass):
    """h_a(x) = 1 iff x <= a, on the real line."""

    name = "threshold"

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        _require_dim(sample, 1, self.name)
        d = sample.size
        order = sorted(range(d), key=lambda i: sample.points[i].coords[0])
        labels_sorted = [sample.labels[i] for i in order]
        ones_prefix = [0]
        for y in labels_sorted:
            ones_prefix.append(ones_prefix[-1] + y)
        total_ones = ones_prefix[-1]
        # Cut k: the k smallest points predicted 1, the rest 0.
        best_k, best_err = 0, total_ones
        for k in range(d + 1):
            err = (k - ones_prefix[k]) + (total_ones - ones_prefix[k])
            if err < best_err:
                best_k, best_err = k, err
        predictions = [0] * d
        for rank, i in enumerate(order):
            predictions[i] = 1 if rank < best_k else 0
        coords = [sample.points[i].coords[0] for i in order]
        if best_k == 0:
            cut = -math.inf
        elif best_k == d:
            cut = math.inf
        else:
            cut = (coords[best_k - 1] + coords[best_k]) / 2
        return certified_outcome(sample, predictions, extras={"threshold": cut})


@dataclass(frozen=True)
class Intervals(HypothesisClass):
    """Indicators of closed intervals [a, b] on the real line (the empty
    interval included)."""

    name = "interval"

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        _require_dim(sample, 1, self.name)
        d = sample.size
        order = sorted(range(d), key=lambda i: sample.points[i].coords[0])
        labels_sorted = [sample.labels[i] for i in order]
        ones_prefix = [0]
        for y in labels_sorted:
            ones_prefix.append(ones_prefix[-1] + y)
        total_ones = ones_prefix[-1]
        best_err, best_window = total_ones, None  # empty interval
        for i in range(d):
            for j in range(i, d):
                ones_in = ones_prefix[j + 1] - ones_prefix[i]
                zeros_in = (j + 1 - i) - ones_in
                err = zeros_in + (total_ones - ones_in)
                if err < best_err:
                    best_err, best_window = err, (i, j)
        predictions = [0] * d
        if best_window is not None:
            lo, hi = best_window
            for rank in range(lo, hi + 1):
                predictions[order[rank]] = 1
            coords = [sample.points[i].coords[0] for i in order]
            extras = {"interval": (coords[lo], coords[hi])}
        else:
            extras = {"interval": None}
        return certified_outcome(sample, predictions, extras=extras)


# ---------------------------------------------------------------------------
# Axis-aligned rectangles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rectangles(HypothesisClass):
    """Axis-aligned boxes in R^n, empty box included. Realizability is
    decided exactly at any size via the bounding-box test; the exact value
    of a nonzero minimum is only computed up to ``exact_loss_cap`` points
    (the shattering scan never consumes nonzero values)."""

    dimension: int
    exact_loss_cap: int = 12
    name = "rectangle"

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be >= 1")

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        _require_dim(sample, self.dimension, self.name)
        pts = [p.coords for p in sample.points]
        d = sample.size
        bbox_preds, bbox = self._bbox_predictions(pts, sample.labels)
        loss = sum(1 for p, y in zip(bbox_preds, sample.labels) if p != y)
        if loss == 0:
            return certified_outcome(sample, bbox_preds, extras={"box": bbox, "exact_loss": True})
        if d > self.exact_loss_cap:
            # Heuristic value only; the zero/nonzero decision above is exact.
            return certified_outcome(
                sample, bbox_preds, extras={"box": bbox, "exact_loss": False}
            )
        best_preds, best_box = bbox_preds, bbox
        best = loss
        for mask in range(1 << d):
            chosen = [pts[i] for i in range(d) if (mask >> i) & 1]
            preds, box = self._bbox_predictions_of(chosen, pts)
            err = sum(1 for p, y in zip(preds, sample.labels) if p != y)
            if err < best:
                best, best_preds, best_box = err, preds, box
        return certified_outcome(
            sample, best_preds, extras={"box": best_box, "exact_loss": True}
        )

    def _bbox_predictions(self, pts, labels):
        positives = [p for p, y in zip(pts, labels) if y == 1]
        return self._bbox_predictions_of(positives, pts)

    @staticmethod
    def _bbox_predictions_of(chosen, pts):
        if not chosen:
            return [0] * len(pts), None
        lo = tuple(min(c) for c in zip(*chosen))
        hi = tuple(max(c) for c in zip(*chosen))
        preds = [
            1 if all(l <= x <= h for x, l, h in zip(p, lo, hi)) else 0 for p in pts
        ]
        return preds, (lo, hi)


# ---------------------------------------------------------------------------
# Half-spaces
# ---------------------------------------------------------------------------

def _signed_rows(sample: LabeledSample) -> list[tuple[float, ...]]:
    # Row i is s_i * (x_i, 1) with s_i = +1 for label 1, -1 for label 0;
    # the trailing 1 makes the half-space nonhomogeneous.
    rows = []
    for point, label in zip(sample.points, sample.labels):
        s = 1 if label == 1 else -1
        rows.append(tuple(s * c for c in (*point.coords, 1.0)))
    return rows


@dataclass(frozen=True)
class HalfspacesLP(HypothesisClass):
    """Nonhomogeneous half-spaces h_w(x) = 1 iff <w, (x, 1)> > 0, with ERM
    by exact LP feasibility of ``A w >= 1``.

    Zero-loss answers come with a rational witness that is re-verified
    before being returned. For infeasible samples the exact minimum is
    searched by re-testing label flips, but only up to ``exact_loss_cap``
    points; beyond that the loss is reported as the lower-bound marker 1
    with ``exact_loss: False``, which is all the shattering scan consumes.
    """

    dimension: int
    exact_loss_cap: int = 16
    name = "halfspace-lp"

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be >= 1")

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        _require_dim(sample, self.dimension, self.name)
        rows = _signed_rows(sample)
        try:
            witness = simplex.feasible_witness(rows)
        except simplex.SimplexError as exc:
            raise OracleError(f"LP solver failed: {exc}") from exc
        if witness is not None:
            return certified_outcome(
                sample, sample.labels,
                extras={"weights": tuple(witness), "exact_loss": True},
            )
        d = sample.size
        if d > self.exact_loss_cap:
            return ErmOutcome(
                loss_numerator=1,
                sample_size=d,
                predictions=None,
                extras={"exact_loss": False},
            )
        for k in range(1, d + 1):
            for flips in itertools.combinations(range(d), k):
                labels = list(sample.labels)
                for i in flips:
                    labels[i] ^= 1
                flipped = sample.with_labels(labels)
                try:
                    w = simplex.feasible_witness(_signed_rows(flipped))
                except simplex.SimplexError as exc:
                    raise OracleError(f"LP solver failed: {exc}") from exc
                if w is not None:
                    return certified_outcome(
                        sample, labels,
                        extras={"weights": tuple(w), "exact_loss": True},
                    )
        raise OracleError("no realizable labeling found, including constants")


def _integer_augmented(sample: LabeledSample) -> list[tuple[int, ...]]:
    # One global scale factor keeps the update trajectory equal (up to a
    # positive multiple) to the trajectory on the raw coordinates, so the
    # mistake sequence and cycle structure are preserved exactly.
    fractions = [
        [Fraction(c) for c in (*p.coords, 1.0)] for p in sample.points
    ]
    scale = 1
    for row in fractions:
        for x in row:
            scale = math.lcm(scale, x.denominator)
    return [tuple(int(x * scale) for x in row) for row in fractions]


def _nonneg_kernel_direction(
    kernel: list[list[Fraction]], counts: Sequence[int]
) -> Optional[list[Fraction]]:
    # Orthogonal projection of the mistake-count vector onto the null space;
    # a componentwise-nonnegative, nonzero result is returned as found.
    r = len(kernel)
    d = len(kernel[0])
    gram = [
        [sum(kernel[a][i] * kernel[b][i] for i in range(d)) for b in range(r)]
        for a in range(r)
    ]
    rhs = [sum(kernel[a][i] * counts[i] for i in range(d)) for a in range(r)]
    alpha = _linalg.solve(gram, rhs)
    lam = [sum(alpha[a] * kernel[a][i] for a in range(r)) for i in range(d)]
    if all(v == 0 for v in lam) or any(v < 0 for v in lam):
        return None
    return lam


@dataclass(frozen=True)
class HalfspacesPerceptron(HypothesisClass):
    """Nonhomogeneous half-spaces with ERM by the Rosenblatt perceptron:
    labels mapped {0,1} -> {-1,+1}, coordinates augmented with a constant
    1, update ``w += s_i * x_i`` on each mistake, cyclic passes from w = 0.
    Arithmetic is exact: coordinates are scaled to integers by one common
    factor, which leaves the mistake sequence unchanged.

    In ``certify`` mode (the default) a failure can be final rather than
    budget-limited, through either of two sound certificates of
    non-separability:

    * a nonnegative, nonzero combination of the signed augmented points
      summing exactly to zero (no w can then put every signed dot product
      strictly positive). The candidate combination is the perceptron's own
      per-point mistake-count vector projected onto the exact null space of
      the point matrix, and is verified in rational arithmetic;
    * a repeated (position, weights) state, which proves the run cycles
      forever, impossible on separable data by the convergence bound.

    With ``certify=False`` the oracle is the plain budgeted perceptron and
    every failure is reported as a budget exhaustion.
    """

    dimension: int
    budget: int = 10_000
    certify: bool = True
    name = "halfspace-perceptron"

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be >= 1")
        if self.budget < 1:
            raise ContractViolation("budget must be >= 1")

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        _require_dim(sample, self.dimension, self.name)
        xs = _integer_augmented(sample)
        signs = [1 if y == 1 else -1 for y in sample.labels]
        signed = [tuple(s * v for v in x) for s, x in zip(signs, xs)]
        d = sample.size
        k = self.dimension + 1
        w = [0] * k
        counts = [0] * d
        updates = 0
        seen = {(0, tuple(w))} if self.certify else None
        kernel = (
            _linalg.nullspace([[signed[i][j] for i in range(d)] for j in range(k)])
            if self.certify
            else []
        )

        best_loss, best_preds = self._evaluate(w, xs, sample)
        if best_loss == 0:
            return certified_outcome(sample, best_preds, extras=self._extras(w, 0))

        while True:
            mistakes = 0
            for i in range(d):
                dot = sum(wj * xj for wj, xj in zip(w, xs[i]))
                if signs[i] * dot <= 0:
                    if updates == self.budget:
                        _, preds = self._best(best_loss, best_preds, w, xs, sample)
                        return certified_outcome(
                            sample, preds, budget_exhausted=True,
                            extras=self._extras(w, updates, exact=False),
                        )
                    for j in range(k):
                        w[j] += signs[i] * xs[i][j]
                    counts[i] += 1
                    updates += 1
                    mistakes += 1
                    if seen is not None:
                        state = ((i + 1) % d, tuple(w))
                        if state in seen:
                            _, preds = self._best(best_loss, best_preds, w, xs, sample)
                            return certified_outcome(
                                sample, preds,
                                extras=self._extras(w, updates, exact=False, certificate="cycle"),
                            )
                        seen.add(state)
            if mistakes == 0:
                return certified_outcome(
                    sample, sample.labels, extras=self._extras(w, updates)
                )
            loss, preds = self._evaluate(w, xs, sample)
            if loss < best_loss:
                best_loss, best_preds = loss, preds
            if best_loss == 0:
                return certified_outcome(
                    sample, best_preds, extras=self._extras(w, updates)
                )
            if kernel:
                lam = _nonneg_kernel_direction(kernel, counts)
                if lam is not None:
                    if any(
                        sum(lam[i] * signed[i][j] for i in range(d)) != 0
                        for j in range(k)
                    ):
                        raise OracleError("invalid non-separability certificate")
                    return certified_outcome(
                        sample, best_preds,
                        extras=self._extras(
                            w, updates, exact=False, certificate="farkas",
                            multipliers=tuple(lam),
                        ),
                    )

    @staticmethod
    def _evaluate(w, xs, sample):
        preds = tuple(
            1 if sum(wj * xj for wj, xj in zip(w, x)) > 0 else 0 for x in xs
        )
        loss = sum(1 for p, y in zip(preds, sample.labels) if p != y)
        return loss, preds

    def _best(self, best_loss, best_preds, w, xs, sample):
        loss, preds = self._evaluate(w, xs, sample)
        return (loss, preds) if loss < best_loss else (best_loss, best_preds)

    @staticmethod
    def _extras(w, updates, exact=True, certificate=None, multipliers=None):
        extras = {
            "weights": tuple(w),
            "updates": updates,
            "certificate": certificate,
            "exact_loss": exact,
        }
        if multipliers is not None:
            extras["multipliers"] = multipliers
        return extras


# ---------------------------------------------------------------------------
# Finite classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteClass(HypothesisClass):
    """A finite class given by a concept matrix; ERM scans every row and
    keeps the first minimizer."""

    matrix: ConceptMatrix
    name = "finite"

    def erm(self, sample: LabeledSample) -> ErmOutcome:
        if not sample.points[0].is_finite_domain:
            raise DomainError("finite class needs index points")
        cols = tuple(p.index for p in sample.points)
        if any(c >= self.matrix.n_cols for c in cols):
            raise DomainError(
                f"column index out of range for a {self.matrix.n_cols}-column matrix"
            )
        patterns = restricted_patterns(self.matrix, cols)
        target = pack_bits(sample.labels)
        best_row, best_dist = 0, sample.size + 1
        for idx, pat in enumerate(patterns):
            dist = (pat ^ target).bit_count()
            if dist < best_dist:
                best_row, best_dist = idx, dist
                if dist == 0:
                    break
        predictions = unpack_bits(patterns[best_row], sample.size)
        return certified_outcome(sample, predictions, extras={"row": best_row})


BUILTIN_CLASS_NAMES = (
    "threshold",
    "interval",
    "rectangle",
    "halfspace-lp",
    "halfspace-perceptron",
    "finite",
)
