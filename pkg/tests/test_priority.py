import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcmkit import core, priority
from pcmkit.priority import (
    NoConvergence,
    PriorityVector,
    eigen_priority,
    geometric_mean_priority,
    lambda_max_batch,
    ratio_matrix,
)

from conftest import random_pcm


def char_poly_root_3x3(m, lo=3.0, hi=4.0, iters=200):
    """Independent lambda_max oracle: bisection on det(A - lambda I) = 0.

    For a 3x3 reciprocal matrix the characteristic polynomial
    -l^3 + 3 l^2 + (k + 1/k - 2) has a single root above 3.
    """
    def det(lam):
        return np.linalg.det(m.entries - lam * np.eye(3))

    while det(hi) > 0:
        hi += 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if det(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestEigenPriority:
    def test_consistent_ratio_matrix(self, ratio_421):
        res = eigen_priority(ratio_421)
        assert res.lambda_max == pytest.approx(3.0, abs=1e-9)
        assert np.allclose(res.vector.weights, (4 / 7, 2 / 7, 1 / 7), rtol=1e-9)

    def test_fig2_matches_char_poly_oracle(self):
        m = core.fig2_3x3(7.0)
        res = eigen_priority(m)
        assert res.lambda_max == pytest.approx(char_poly_root_3x3(m), abs=1e-9)

    def test_aks_lambda_strictly_above_n(self):
        res = eigen_priority(core.a_ks(5, 2.0))
        assert res.lambda_max > 5.0

    def test_residual_below_tolerance(self):
        res = eigen_priority(core.order5_example(), tol=1e-12)
        assert res.residual <= 1e-12
        w = np.array(res.vector.weights)
        y = core.order5_example().entries @ w
        assert np.max(np.abs(y - res.lambda_max * w) / w) <= 1e-12

    def test_sum_to_one(self):
        res = eigen_priority(core.a2())
        assert sum(res.vector.weights) == pytest.approx(1.0, abs=1e-12)

    def test_no_convergence_reports_residual(self):
        with pytest.raises(NoConvergence) as exc:
            eigen_priority(core.order5_example(), tol=1e-12, max_iter=2)
        assert exc.value.residual > 1e-12

    def test_lambda_at_least_n(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = random_pcm(rng, 5)
            assert eigen_priority(m).lambda_max >= 5 - 1e-9


class TestGeometricMean:
    def test_two_by_two(self):
        w = geometric_mean_priority(core.make_pcm([((1, 2), 2.0)]))
        assert np.allclose(w.weights, (2 / 3, 1 / 3), rtol=1e-12)

    def test_recovers_generating_vector(self, ratio_421):
        w = geometric_mean_priority(ratio_421)
        assert np.allclose(w.weights, (4 / 7, 2 / 7, 1 / 7), rtol=1e-12)

    def test_uniform_on_all_ones(self):
        w = geometric_mean_priority(core.a_ks(4, 1.0))
        assert np.allclose(w.weights, 0.25, rtol=1e-12)


class TestRatioMatrix:
    def test_all_ones(self):
        m = ratio_matrix(PriorityVector(weights=(1.0, 1.0, 1.0), normalization="geometric_raw"))
        assert np.array_equal(m.entries, np.ones((3, 3)))

    def test_direct_ratios(self):
        m = ratio_matrix(PriorityVector(weights=(4.0, 2.0, 1.0), normalization="geometric_raw"))
        assert np.allclose(m.entries, [[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]])
        assert core.is_consistent(m)

    def test_round_trip_fixed_point(self):
        w0 = (0.5, 0.3, 0.2)
        w = geometric_mean_priority(
            ratio_matrix(PriorityVector(weights=w0, normalization="sum_to_one"))
        )
        assert np.allclose(w.weights, w0, rtol=1e-12)


class TestProperties:
    def test_methods_agree_on_consistent(self, ratio_421):
        we = eigen_priority(ratio_421).vector.weights
        wg = geometric_mean_priority(ratio_421).weights
        assert np.allclose(we, wg, rtol=1e-9)

    def test_methods_agree_on_random_3x3(self):
        # known coincidence of the two methods at n = 3
        rng = np.random.default_rng(11)
        for _ in range(50):
            m = random_pcm(rng, 3)
            we = eigen_priority(m).vector.weights
            wg = geometric_mean_priority(m).weights
            assert np.allclose(we, wg, rtol=1e-9)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(3)
        m = random_pcm(rng, 5)
        perm = rng.permutation(5)
        pm = core.from_array(m.entries[np.ix_(perm, perm)])
        re_m, re_p = eigen_priority(m), eigen_priority(pm)
        assert re_p.lambda_max == pytest.approx(re_m.lambda_max, rel=1e-9)
        assert np.allclose(np.array(re_m.vector.weights)[perm], re_p.vector.weights, rtol=1e-8)
        assert np.allclose(
            np.array(geometric_mean_priority(m).weights)[perm],
            geometric_mean_priority(pm).weights,
            rtol=1e-12,
        )

    def test_transpose_preserves_lambda_and_inverts_gm(self):
        rng = np.random.default_rng(4)
        m = random_pcm(rng, 4)
        mt = core.from_array(m.entries.T)
        assert eigen_priority(mt).lambda_max == pytest.approx(
            eigen_priority(m).lambda_max, rel=1e-9
        )
        inv = 1.0 / np.array(geometric_mean_priority(m).weights)
        assert np.allclose(inv / inv.sum(), geometric_mean_priority(mt).weights, rtol=1e-12)

    def test_transpose_inverts_eigen_ranking_at_n3(self):
        # eigen weights invert under transposition where they coincide with
        # the geometric means; the transpose eigenvector is the left Perron
        # vector of A, which differs from the inverted weights for n > 3
        rng = np.random.default_rng(14)
        m = random_pcm(rng, 3)
        inv = 1.0 / np.array(eigen_priority(m).vector.weights)
        assert np.allclose(
            inv / inv.sum(),
            eigen_priority(core.from_array(m.entries.T)).vector.weights,
            rtol=1e-8,
        )

    @given(st.integers(min_value=0, max_value=10_000))
    def test_positive_weights_enforced(self, seed):
        rng = np.random.default_rng(seed)
        m = random_pcm(rng, 4)
        assert all(w > 0 for w in eigen_priority(m).vector.weights)


class TestBatch:
    def test_matches_scalar_solver(self):
        rng = np.random.default_rng(5)
        ms = [random_pcm(rng, 4) for _ in range(64)]
        mats = np.stack([m.entries for m in ms])
        lams = lambda_max_batch(mats)
        for lam, m in zip(lams, ms):
            assert lam == pytest.approx(eigen_priority(m).lambda_max, abs=1e-10)
