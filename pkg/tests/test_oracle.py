import numpy as np
import pytest

from lorcert import (
    DimensionError,
    SamplerConfig,
    Verdict,
    brute_force_decide,
    brute_force_invariant,
    decide,
    membership,
    MembershipClass,
    sample_lorentz,
    verify_dual,
    verify_primal,
)


class TestSampler:
    def test_all_samples_in_cone(self):
        for n in (2, 3, 5):
            X = sample_lorentz(n, SamplerConfig(seed=1, count=500))
            for x in X:
                assert membership(x).cls is not MembershipClass.EXTERIOR

    def test_two_dimensional_bound(self):
        X = sample_lorentz(2, SamplerConfig(seed=1, count=200))
        assert np.all(np.abs(X[:, 0]) <= X[:, 1] + 1e-12)

    def test_deterministic(self):
        a = sample_lorentz(3, SamplerConfig(seed=9, count=50))
        b = sample_lorentz(3, SamplerConfig(seed=9, count=50))
        np.testing.assert_array_equal(a, b)

    def test_height_mean(self):
        X = sample_lorentz(3, SamplerConfig(seed=2, count=20_000))
        assert 0.45 <= float(np.mean(X[:, -1])) <= 0.55

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SamplerConfig(count=0)
        with pytest.raises(ValueError):
            SamplerConfig(resolution=5)

    def test_dimension_guard(self):
        with pytest.raises(DimensionError):
            sample_lorentz(1, SamplerConfig())


class TestBruteForceDecide:
    def test_semipositive_example(self):
        cert = brute_force_decide(np.array([[1.0, 4.0], [5.0, 3.0]]))
        assert cert.verdict is Verdict.SEMIPOSITIVE
        assert verify_primal([[1.0, 4.0], [5.0, 3.0]], cert.primal).ok

    def test_refuted_example(self):
        cert = brute_force_decide(np.array([[5.0, 7.0], [6.0, 5.0]]))
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        assert verify_dual([[5.0, 7.0], [6.0, 5.0]], cert.dual)

    def test_boundary_diagonal(self):
        # corner exactly zero: margins vanish, so the sweep may not commit
        cert = brute_force_decide(np.diag([3.0, 0.0]))
        assert cert.verdict in (Verdict.UNDECIDED, Verdict.NOT_SEMIPOSITIVE)

    def test_three_by_three(self):
        A = np.array([[1.0, 1.0, 2.0], [1.0, 1.0, 4.0], [1.0, 1.0, 1.0]])
        assert brute_force_decide(A).verdict is Verdict.NOT_SEMIPOSITIVE

    def test_size_guard(self):
        with pytest.raises(DimensionError):
            brute_force_decide(np.eye(5))


class TestBruteForceInvariant:
    def test_identity(self):
        assert brute_force_invariant(np.eye(3))

    def test_widening(self):
        assert brute_force_invariant(np.diag([1.0, 2.0]))

    def test_narrowing(self):
        assert not brute_force_invariant(np.diag([2.0, 1.0]))

    def test_size_guard(self):
        with pytest.raises(DimensionError):
            brute_force_invariant(np.eye(6))


class TestOracleEngineAgreement:
    def test_two_by_two(self, rng):
        for _ in range(100):
            A = rng.standard_normal((2, 2))
            fast = decide(A)
            slow = brute_force_decide(A, SamplerConfig(seed=3, resolution=2000))
            if fast.is_definite and slow.is_definite:
                assert fast.verdict is slow.verdict

    def test_three_by_three(self, rng):
        for _ in range(30):
            A = rng.standard_normal((3, 3))
            fast = decide(A)
            slow = brute_force_decide(A, SamplerConfig(seed=3, resolution=200))
            if fast.is_definite and slow.is_definite:
                assert fast.verdict is slow.verdict
