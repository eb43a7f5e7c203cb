"""Shared fixtures: independent brute-force oracles and seeded generators.

The brute-force oracles deliberately re-derive minima from candidate grids
built on sample-coordinate midpoints, so they share no code path with the
library oracles they validate.
"""

import math

import numpy as np
import pytest

from vckit import ConceptMatrix, LabeledSample, Point


def continuous_sample(coords_rows, labels) -> LabeledSample:
    return LabeledSample(
        tuple(Point.continuous(*row) for row in coords_rows), tuple(labels)
    )


def sample_1d(xs, labels) -> LabeledSample:
    return continuous_sample([(x,) for x in xs], labels)


def _candidate_cuts(xs):
    xs = sorted(set(xs))
    cands = [xs[0] - 1.0]
    for a, b in zip(xs, xs[1:]):
        cands.append((a + b) / 2)
    cands.append(xs[-1] + 1.0)
    return cands


def brute_threshold_loss(sample: LabeledSample) -> int:
    xs = [p.coords[0] for p in sample.points]
    best = sample.size
    for a in _candidate_cuts(xs):
        preds = [1 if x <= a else 0 for x in xs]
        best = min(best, sum(p != y for p, y in zip(preds, sample.labels)))
    return best


def brute_interval_loss(sample: LabeledSample) -> int:
    xs = [p.coords[0] for p in sample.points]
    cands = _candidate_cuts(xs)
    best = sum(sample.labels)  # empty interval
    for i, lo in enumerate(cands):
        for hi in cands[i:]:
            preds = [1 if lo <= x <= hi else 0 for x in xs]
            best = min(best, sum(p != y for p, y in zip(preds, sample.labels)))
    return best


def brute_rectangle_loss(sample: LabeledSample) -> int:
    pts = [p.coords for p in sample.points]
    n = len(pts[0])
    axis_cands = [_candidate_cuts([p[j] for p in pts]) for j in range(n)]
    boxes = [None]  # empty box
    def extend(acc, j):
        if j == n:
            boxes.append(tuple(acc))
            return
        for i, lo in enumerate(axis_cands[j]):
            for hi in axis_cands[j][i:]:
                extend(acc + [(lo, hi)], j + 1)
    extend([], 0)
    best = sample.size
    for box in boxes:
        if box is None:
            preds = [0] * sample.size
        else:
            preds = [
                1 if all(lo <= x <= hi for x, (lo, hi) in zip(p, box)) else 0
                for p in pts
            ]
        best = min(best, sum(p != y for p, y in zip(preds, sample.labels)))
    return best


def planted_separable(rng, dimension, size, margin=0.2):
    """Strictly separable sample: labels from a random hyperplane, points
    redrawn until they clear the margin."""
    w = rng.normal(size=dimension + 1)
    w /= math.sqrt(float(np.dot(w, w)))
    pts, labels = [], []
    while len(pts) < size:
        x = rng.uniform(-1.0, 1.0, dimension)
        v = float(np.dot(w, np.append(x, 1.0)))
        if abs(v) < margin:
            continue
        p = Point.continuous(*x)
        if p in pts:
            continue
        pts.append(p)
        labels.append(1 if v > 0 else 0)
    return LabeledSample(tuple(pts), tuple(labels))


def random_matrix(rng, max_rows=32, max_cols=8) -> ConceptMatrix:
    rows = int(rng.integers(1, max_rows + 1))
    cols = int(rng.integers(1, max_cols + 1))
    bits = rng.integers(0, 2, size=(rows, cols))
    return ConceptMatrix.from_bits(bits.tolist())


@pytest.fixture(scope="session")
def matrix_corpus():
    """100 seeded random concept matrices (rows <= 32, cols <= 8)."""
    rng = np.random.default_rng(20240817)
    return [random_matrix(rng) for _ in range(100)]
