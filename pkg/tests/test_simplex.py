import itertools
from fractions import Fraction

import numpy as np
import pytest

from vckit.simplex import feasible_witness, satisfies


def signed_rows(points, labels):
    return [
        tuple((1 if y else -1) * c for c in (*p, 1.0))
        for p, y in zip(points, labels)
    ]


def test_separable_pair_has_witness():
    rows = signed_rows([(0.0, 0.0), (1.0, 0.0)], [1, 0])
    w = feasible_witness(rows)
    assert w is not None
    assert satisfies(rows, w)


def test_xor_infeasible():
    rows = signed_rows([(0, 0), (1, 1), (0, 1), (1, 0)], [0, 0, 1, 1])
    assert feasible_witness(rows) is None


def test_all_labelings_of_affinely_independent_triple():
    points = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
    for labels in itertools.product([0, 1], repeat=3):
        rows = signed_rows(points, labels)
        w = feasible_witness(rows)
        assert w is not None, labels
        assert satisfies(rows, w)


def test_constant_labelings_always_feasible():
    rng = np.random.default_rng(4)
    pts = [tuple(map(float, rng.uniform(-5, 5, 3))) for _ in range(6)]
    for labels in ([1] * 6, [0] * 6):
        assert feasible_witness(signed_rows(pts, labels)) is not None


def test_boundary_point_counts_as_unseparated():
    # Positive at the origin of a homogeneous-looking split: strict margin
    # still achievable through the constant coordinate.
    rows = signed_rows([(0.0,), (0.0001,)], [1, 0])
    assert feasible_witness(rows) is not None


def test_witnesses_are_exact_rationals():
    rows = signed_rows([(0.1, 0.2), (0.3, 0.7), (-0.5, 0.4)], [1, 0, 1])
    w = feasible_witness(rows)
    assert w is not None
    assert all(isinstance(v, Fraction) for v in w)


def test_randomized_agreement_with_float_lp():
    # Cross-check feasibility verdicts against scipy's float LP on inputs
    # scaled to be numerically benign.
    linprog = pytest.importorskip("scipy.optimize").linprog
    rng = np.random.default_rng(11)
    for _ in range(60):
        d = int(rng.integers(2, 7))
        pts = rng.uniform(-1, 1, (d, 2))
        labels = rng.integers(0, 2, d)
        rows = signed_rows([tuple(map(float, p)) for p in pts], labels.tolist())
        exact = feasible_witness(rows) is not None
        a_ub = -np.array([[float(x) for x in r] for r in rows])
        res = linprog(
            c=np.zeros(3), A_ub=a_ub, b_ub=-np.ones(d), bounds=[(None, None)] * 3,
            method="highs",
        )
        assert exact == res.success


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        feasible_witness([(1.0, 2.0), (1.0,)])
