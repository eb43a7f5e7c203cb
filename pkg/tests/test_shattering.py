import itertools

import numpy as np
import pytest

from vckit import (
    ConceptMatrix,
    ContractViolation,
    FiniteClass,
    HalfspacesLP,
    HalfspacesPerceptron,
    Intervals,
    Point,
    Rectangles,
    Thresholds,
    enumerate_labelings,
    shatters,
    shatters_matrix_reference,
)

from conftest import random_matrix


def pts_1d(*xs):
    return tuple(Point.continuous(float(x)) for x in xs)


def pts_2d(*pairs):
    return tuple(Point.continuous(*p) for p in pairs)


class TestEnumerateLabelings:
    def test_d1(self):
        assert list(enumerate_labelings(1)) == [(0,), (1,)]

    def test_d2_lexicographic_first_point_most_significant(self):
        assert list(enumerate_labelings(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    @pytest.mark.parametrize("d", [1, 2, 3, 5, 8])
    def test_counting(self, d):
        seen = list(enumerate_labelings(d))
        assert len(seen) == 2 ** d
        assert len(set(seen)) == 2 ** d

    def test_range_contract(self):
        with pytest.raises(ContractViolation):
            list(enumerate_labelings(0))
        with pytest.raises(ContractViolation):
            list(enumerate_labelings(63))


class TestShatters:
    def test_threshold_singleton(self):
        v = shatters(Thresholds(), pts_1d(0.25))
        assert v.shattered and v.erm_calls == 2 and not v.unresolved
        assert v.witness_labeling is None

    def test_threshold_pair_witness(self):
        v = shatters(Thresholds(), pts_1d(0.25, 0.75))
        assert not v.shattered
        assert v.witness_labeling == (0, 1)
        assert v.erm_calls == 2  # (0,0) realizable, (0,1) is the first failure

    def test_halfspace_triple_shattered(self):
        v = shatters(HalfspacesLP(2), pts_2d((0, 0), (1, 0), (0, 1)))
        assert v.shattered and v.erm_calls == 8

    def test_square_corners_xor_witness(self):
        v = shatters(HalfspacesLP(2), pts_2d((0, 0), (0, 1), (1, 0), (1, 1)))
        assert not v.shattered
        assert v.witness_labeling == (0, 1, 1, 0)

    def test_duplicate_points_rejected(self):
        with pytest.raises(ContractViolation):
            shatters(Thresholds(), pts_1d(0.5, 0.5))

    def test_call_count_bound(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            d = int(rng.integers(1, 5))
            pts = pts_1d(*rng.uniform(0, 1, d))
            v = shatters(Intervals(), pts)
            assert 1 <= v.erm_calls <= 2 ** d
            assert v.shattered == (v.erm_calls == 2 ** d and v.witness_labeling is None)

    def test_unresolved_flag_from_budgeted_oracle(self):
        # Plain perceptron with a tiny budget cannot certify its failures.
        pts = pts_2d((0, 0), (1, 1), (0, 1), (1, 0))
        v = shatters(HalfspacesPerceptron(2, budget=50, certify=False), pts)
        assert not v.shattered
        assert v.unresolved

    def test_certified_perceptron_resolves_square(self):
        pts = pts_2d((0, 0), (1, 1), (0, 1), (1, 0))
        v = shatters(HalfspacesPerceptron(2), pts)
        assert not v.shattered
        assert not v.unresolved


class TestAntiMonotonicity:
    @pytest.mark.parametrize(
        "make_cls,dim",
        [
            (lambda: Thresholds(), 1),
            (lambda: Intervals(), 1),
            (lambda: Rectangles(2), 2),
            (lambda: HalfspacesLP(2), 2),
        ],
    )
    def test_subsets_of_shattered_sets_are_shattered(self, make_cls, dim):
        rng = np.random.default_rng(5)
        cls = make_cls()
        for _ in range(15):
            d = int(rng.integers(2, 6 if dim == 1 else 5))
            pts = tuple(
                Point.continuous(*rng.uniform(-1, 1, dim)) for _ in range(d)
            )
            if shatters(cls, pts).shattered:
                for size in range(1, d):
                    for subset in itertools.combinations(pts, size):
                        assert shatters(cls, subset).shattered


class TestMatrixReference:
    def test_full_matrix(self):
        m = ConceptMatrix.from_bits([[0, 0], [0, 1], [1, 0], [1, 1]])
        assert shatters_matrix_reference(m, (0, 1))

    def test_parity_matrix_pairs(self):
        m = ConceptMatrix.from_bits(
            [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
        )
        assert shatters_matrix_reference(m, (0, 1))
        assert shatters_matrix_reference(m, (0, 2))
        assert shatters_matrix_reference(m, (1, 2))

    def test_four_rows_cannot_shatter_three_columns(self):
        m = ConceptMatrix.from_bits(
            [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
        )
        assert not shatters_matrix_reference(m, (0, 1, 2))

    def test_oracle_equivalence_with_erm_scan(self):
        # The ERM pipeline on a finite class must agree with the direct
        # restriction count on every column subset.
        rng = np.random.default_rng(6)
        for _ in range(25):
            m = random_matrix(rng, max_rows=16, max_cols=6)
            cls = FiniteClass(m)
            for size in range(1, m.n_cols + 1):
                for cols in itertools.combinations(range(m.n_cols), size):
                    pts = tuple(Point.finite(c) for c in cols)
                    assert (
                        shatters(cls, pts).shattered
                        == shatters_matrix_reference(m, cols)
                    )

    def test_oracle_equivalence_at_full_desk_scale(self, matrix_corpus):
        # Same agreement on the 32-row / 8-column corpus, every subset.
        for m in matrix_corpus[:20]:
            cls = FiniteClass(m)
            for size in range(1, m.n_cols + 1):
                for cols in itertools.combinations(range(m.n_cols), size):
                    pts = tuple(Point.finite(c) for c in cols)
                    assert (
                        shatters(cls, pts).shattered
                        == shatters_matrix_reference(m, cols)
                    )

    def test_reference_input_contracts(self):
        from vckit import ContractViolation, DomainError

        m = ConceptMatrix.from_bits([[0, 1], [1, 0]])
        with pytest.raises(DomainError):
            shatters_matrix_reference(m, (0, 5))
        with pytest.raises(ContractViolation):
            shatters_matrix_reference(m, (0, 0))
        with pytest.raises(ContractViolation):
            shatters_matrix_reference(m, ())


class TestParallelDeterminism:
    def cases(self):
        rng = np.random.default_rng(7)
        cases = []
        for _ in range(6):
            d = int(rng.integers(2, 6))
            cases.append((Thresholds(), pts_1d(*rng.uniform(0, 1, d))))
            cases.append(
                (HalfspacesLP(2), tuple(Point.continuous(*rng.uniform(-1, 1, 2)) for _ in range(int(rng.integers(3, 6)))))
            )
        cases.append((HalfspacesLP(2), pts_2d((0, 0), (0, 1), (1, 0), (1, 1))))
        return cases

    def test_same_verdict_for_any_worker_count(self):
        for cls, pts in self.cases():
            base = shatters(cls, pts, workers=1)
            for workers in (2, 8):
                v = shatters(cls, pts, workers=workers)
                assert v.shattered == base.shattered
                assert v.witness_labeling == base.witness_labeling
                assert v.erm_calls == base.erm_calls
                assert v.unresolved == base.unresolved


class TestComplementClosedOptimization:
    def test_halved_scan_on_complement_closed_class(self):
        # A matrix closed under row complement: scanning half the labelings
        # must reach the same verdicts.
        m = ConceptMatrix.from_bits(
            [[0, 0, 0], [1, 1, 1], [0, 1, 1], [1, 0, 0], [0, 1, 0], [1, 0, 1]]
        )
        cls = FiniteClass(m)
        for cols in itertools.combinations(range(3), 2):
            pts = tuple(Point.finite(c) for c in cols)
            full = shatters(cls, pts)
            half = shatters(cls, pts, complement_closed=True)
            assert full.shattered == half.shattered
            assert half.erm_calls <= 2 ** (len(cols) - 1)
            if not full.shattered:
                assert full.witness_labeling == half.witness_labeling
