import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahpkit import (
    ConvergenceError,
    InvalidMatrixError,
    Method,
    PairwiseMatrix,
    PriorityVector,
    consistency_report,
    derive_priorities_eigen,
    derive_priorities_geomean,
    random_index,
    validate_reciprocal,
)
from conftest import consistent_matrix, random_reciprocal

# Closed-form oracle for the three-criteria example: row geometric means
# are (1*3*5)^(1/3), (1/3*1*7)^(1/3), (1/5*1/7*1)^(1/3); at n = 3 this
# provably equals the principal eigenvector.
_FIG1_GM = (15.0 ** (1 / 3), (7.0 / 3.0) ** (1 / 3), (1.0 / 35.0) ** (1 / 3))
FIG1_WEIGHTS = tuple(g / sum(_FIG1_GM) for g in _FIG1_GM)


class TestValidateReciprocal:
    def test_all_ones_ok(self):
        m = PairwiseMatrix(np.ones((3, 3)), ["a", "b", "c"])
        assert validate_reciprocal(m) == []

    def test_fig1_ok(self, fig1_matrix):
        assert validate_reciprocal(fig1_matrix) == []

    def test_reciprocity_violation_located(self):
        m = PairwiseMatrix([[1, 3], [0.5, 1]], ["a", "b"])
        violations = validate_reciprocal(m)
        assert len(violations) == 1
        v = violations[0]
        assert (v.i, v.j) == (1, 0)
        assert v.reason == "reciprocity"

    def test_diagonal_violation(self):
        m = PairwiseMatrix([[2.0, 1], [1, 1]], ["a", "b"])
        assert any(v.reason == "diagonal" and (v.i, v.j) == (0, 0) for v in validate_reciprocal(m))

    def test_nonpositive_entry(self):
        m = PairwiseMatrix([[1, -3], [1 / 3, 1]], ["a", "b"])
        assert any(v.reason == "positivity" for v in validate_reciprocal(m))

    def test_non_square_rejected_at_construction(self):
        with pytest.raises(InvalidMatrixError):
            PairwiseMatrix([[1, 2, 3], [0.5, 1, 2]], ["a", "b"])

    def test_item_id_count_must_match(self):
        with pytest.raises(InvalidMatrixError):
            PairwiseMatrix(np.ones((3, 3)), ["a", "b"])


class TestEigenvectorPriorities:
    def test_uniform_matrix(self):
        m = PairwiseMatrix(np.ones((3, 3)), ["a", "b", "c"])
        pv = derive_priorities_eigen(m)
        assert pv.weights == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-12)
        assert pv.lambda_max == pytest.approx(3.0, abs=1e-12)
        assert pv.method is Method.EIGENVECTOR

    def test_consistent_construction_recovers_weights(self):
        w = np.array([0.6, 0.3, 0.1])
        m = PairwiseMatrix(w[:, None] / w[None, :], ["a", "b", "c"])
        pv = derive_priorities_eigen(m)
        assert pv.weights == pytest.approx(tuple(w), abs=1e-12)
        assert pv.lambda_max == pytest.approx(3.0, abs=1e-10)

    def test_fig1_against_geometric_mean_oracle(self, fig1_matrix):
        pv = derive_priorities_eigen(fig1_matrix)
        assert pv.weights == pytest.approx(FIG1_WEIGHTS, abs=1e-9)

    def test_fig1_against_numpy_eig(self, fig1_matrix):
        values, vectors = np.linalg.eig(fig1_matrix.entries)
        k = int(np.argmax(values.real))
        ref = np.abs(vectors[:, k].real)
        ref = ref / ref.sum()
        pv = derive_priorities_eigen(fig1_matrix)
        assert pv.weights == pytest.approx(tuple(ref), abs=1e-9)
        assert pv.lambda_max == pytest.approx(float(values[k].real), abs=1e-9)

    def test_determinism(self, fig1_matrix):
        a = derive_priorities_eigen(fig1_matrix)
        b = derive_priorities_eigen(fig1_matrix)
        assert a.weights == b.weights
        assert a.lambda_max == b.lambda_max

    def test_nonconvergence_names_iteration_count(self, fig1_matrix):
        with pytest.raises(ConvergenceError, match="2 iterations"):
            derive_priorities_eigen(fig1_matrix, tol=1e-30, max_iter=2)

    def test_invalid_matrix_rejected(self):
        m = PairwiseMatrix([[1, 3], [0.5, 1]], ["a", "b"])
        with pytest.raises(InvalidMatrixError):
            derive_priorities_eigen(m)

    def test_bad_solver_arguments(self, fig1_matrix):
        with pytest.raises(ValueError):
            derive_priorities_eigen(fig1_matrix, tol=0.0)
        with pytest.raises(ValueError):
            derive_priorities_eigen(fig1_matrix, max_iter=0)

    def test_order_one(self):
        pv = derive_priorities_eigen(PairwiseMatrix([[1.0]], ["a"]))
        assert pv.weights == (1.0,)
        assert pv.lambda_max == pytest.approx(1.0)


class TestGeometricMeanPriorities:
    def test_uniform_matrix(self):
        m = PairwiseMatrix(np.ones((4, 4)), list("abcd"))
        pv = derive_priorities_geomean(m)
        assert pv.weights == pytest.approx((0.25,) * 4, abs=1e-15)
        assert pv.lambda_max is None
        assert pv.method is Method.GEOMETRIC_MEAN

    def test_consistent_matrix_recovered_exactly(self):
        rng = np.random.default_rng(7)
        m, w = consistent_matrix(rng, 5)
        pv = derive_priorities_geomean(m)
        assert pv.weights == pytest.approx(tuple(w), abs=1e-12)

    def test_fig1_oracle(self, fig1_matrix):
        pv = derive_priorities_geomean(fig1_matrix)
        assert pv.weights == pytest.approx(FIG1_WEIGHTS, abs=1e-14)

    def test_agrees_with_eigen_for_n3(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            m = random_reciprocal(rng, 3)
            eig = derive_priorities_eigen(m)
            gm = derive_priorities_geomean(m)
            assert eig.weights == pytest.approx(gm.weights, abs=1e-6)


class TestConsistency:
    def test_consistent_matrix_has_zero_cr(self):
        w = np.array([0.5, 0.3, 0.2])
        m = PairwiseMatrix(w[:, None] / w[None, :], ["a", "b", "c"])
        report = consistency_report(m, derive_priorities_eigen(m))
        assert report.cr == pytest.approx(0.0, abs=1e-9)
        assert report.consistent

    def test_fig1_flagged_inconsistent(self, fig1_matrix):
        pv = derive_priorities_eigen(fig1_matrix)
        report = consistency_report(fig1_matrix, pv)
        # hand oracle: CI = (lambda - 3) / 2, CR = CI / 0.58
        assert report.ci == pytest.approx((pv.lambda_max - 3) / 2, abs=1e-12)
        assert report.cr == pytest.approx(report.ci / 0.58, abs=1e-12)
        assert report.cr == pytest.approx(0.201, abs=0.01)
        assert not report.consistent

    def test_fig1_worst_judgment_is_a_maximal_deviation(self, fig1_matrix):
        # For this matrix the three deviations are an exact three-way tie
        # at (1/3) ln(3*7/5); any of the pairs is a correct answer.
        pv = derive_priorities_eigen(fig1_matrix)
        worst = consistency_report(fig1_matrix, pv).worst_judgment
        assert (worst.i, worst.j) in {(0, 1), (0, 2), (1, 2)}
        assert worst.deviation == pytest.approx(math.log(4.2) / 3, abs=1e-6)

    def test_2x2_always_consistent(self):
        m = PairwiseMatrix([[1, 9], [1 / 9, 1]], ["a", "b"])
        report = consistency_report(m, derive_priorities_eigen(m))
        assert report.cr == 0.0
        assert report.ci == 0.0
        assert report.consistent
        assert report.worst_judgment is None

    def test_requires_lambda_max(self, fig1_matrix):
        gm = derive_priorities_geomean(fig1_matrix)
        with pytest.raises(ValueError, match="lambda_max"):
            consistency_report(fig1_matrix, gm)

    def test_threshold_is_configurable(self, fig1_matrix):
        pv = derive_priorities_eigen(fig1_matrix)
        assert consistency_report(fig1_matrix, pv, threshold=0.25).consistent


class TestRandomIndex:
    @pytest.mark.parametrize("n,expected", [(1, 0.0), (2, 0.0), (3, 0.58), (4, 0.90), (10, 1.49), (15, 1.58)])
    def test_table_values(self, n, expected):
        assert random_index(n) == expected

    @pytest.mark.parametrize("n", [0, 16, -1])
    def test_out_of_range(self, n):
        with pytest.raises(ValueError, match="1..15"):
            random_index(n)


class TestPriorityVector:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            PriorityVector((0.5, 0.6), Method.ASSIGNED)

    def test_assigned_normalizes(self):
        pv = PriorityVector.assigned([2, 1, 1])
        assert pv.weights == pytest.approx((0.5, 0.25, 0.25), abs=1e-15)
        assert pv.method is Method.ASSIGNED

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            PriorityVector.assigned([1.0, -0.5])

    def test_rejects_zero_sum(self):
        with pytest.raises(ValueError):
            PriorityVector.assigned([0.0, 0.0])


class TestProperties:
    def test_consistent_recovery_both_methods(self):
        rng = np.random.default_rng(42)
        for n in range(3, 10):
            for _ in range(5):
                m, w = consistent_matrix(rng, n)
                eig = derive_priorities_eigen(m)
                gm = derive_priorities_geomean(m)
                assert np.max(np.abs(np.array(eig.weights) - w)) <= 1e-8
                assert np.max(np.abs(np.array(gm.weights) - w)) <= 1e-8
                assert eig.lambda_max - n <= 1e-8
                assert np.max(np.abs(np.array(eig.weights) - np.array(gm.weights))) <= 1e-10

    def test_positivity_normalization_lambda_bound(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            n = int(rng.integers(2, 10))
            m = random_reciprocal(rng, n)
            pv = derive_priorities_eigen(m)
            assert all(w > 0 for w in pv.weights)
            assert abs(math.fsum(pv.weights) - 1.0) <= 1e-12
            assert pv.lambda_max >= n - 1e-9

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(3, 9))
            m = random_reciprocal(rng, n)
            perm = rng.permutation(n)
            base = np.array(derive_priorities_eigen(m).weights)
            permuted = np.array(derive_priorities_eigen(m.permuted(perm)).weights)
            assert np.max(np.abs(permuted - base[perm])) <= 1e-9

    @given(st.lists(st.floats(min_value=0.05, max_value=20.0), min_size=3, max_size=8))
    @settings(max_examples=40, deadline=None)
    def test_reciprocity_of_consistent_construction(self, raw):
        w = np.asarray(raw)
        m = PairwiseMatrix(w[:, None] / w[None, :], [f"c{k}" for k in range(len(raw))])
        assert validate_reciprocal(m) == []
        prod = m.entries * m.entries.T
        assert np.max(np.abs(prod - 1.0)) <= 1e-12
