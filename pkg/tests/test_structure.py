import math

import numpy as np
import pytest

from lorcert import (
    MembershipClass,
    PreconditionError,
    StructureError,
    Verdict,
    block_embed_certificate,
    copositive_screen,
    decide,
    diagonal_certificate,
    invariance_properties,
    lower_triangular_certificate,
    membership,
    orthogonal_certificate,
    perturbation_transfer,
    rank_one_certificate,
    structural_screen,
    verify_dual,
    verify_primal,
)
from lorcert.structure import _triangular_gap_witness, _triangular_row_witness

from conftest import random_orthogonal


class TestStructuralScreen:
    def test_interior_last_column(self):
        A = np.array([[1.0, 9.0, 0.0], [2.0, 3.0, 0.0], [0.0, 0.0, 2.0]])
        cert = structural_screen(A)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.0, 0.0, 1.0])

    def test_bottom_row_refuter(self):
        A = np.array([[0.0, 0.0], [1.0, -2.0]])
        cert = structural_screen(A)
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        # A^T y = (-1, 2), inside the cone
        np.testing.assert_allclose(A.T @ cert.dual, [-1.0, 2.0], atol=1e-12)
        assert verify_dual(A, cert.dual)

    def test_no_screen_fires(self):
        # semipositive, but no structural hypothesis holds:
        # row 2 not reflected, last column (4,3) outside, 17 < 17 fails
        A = np.array([[1.0, 4.0], [5.0, 3.0]])
        assert np.sum(A[0] ** 2) == 0.5 * np.sum(A[1] ** 2)
        cert = structural_screen(A)
        assert cert.verdict is Verdict.NO_VERDICT
        assert decide(A).verdict is Verdict.SEMIPOSITIVE

    def test_column_pair_screen(self):
        # last column on the boundary, first column interior
        A = np.array([[1.0, 0.1, 3.0], [0.5, -0.2, 4.0], [9.0, 0.05, 5.0]])
        assert membership(A[:, 2]).cls is MembershipClass.BOUNDARY
        assert membership(A[:, 0]).cls is MembershipClass.INTERIOR
        cert = structural_screen(A)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.5, 0.0, 1.0])
        assert verify_primal(A, cert.primal).ok

    def test_row_norm_screen(self):
        # last column kept outside the cone so the earlier screens pass over
        A = np.array([[0.1, 0.2, 0.5], [-0.1, 0.05, 0.6], [3.0, -1.0, 0.4]])
        assert membership(A[:, 2]).cls is MembershipClass.EXTERIOR
        assert np.sum(A[:2] ** 2) < 0.5 * np.sum(A[2] ** 2) and A[2, 2] >= 0
        cert = structural_screen(A)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        assert cert.method == "row_norm_bound"
        assert verify_primal(A, cert.primal).ok


class TestRankOne:
    def test_lift_case(self):
        # v outside both cones with v_n >= 0: witness v + ||v|| e_n
        cert = rank_one_certificate([0.0, 1.0], [2.0, 1.0])
        assert cert.verdict is Verdict.SEMIPOSITIVE
        q = np.array([2.0, 1.0 + math.sqrt(5.0)])
        np.testing.assert_allclose(cert.primal, q)
        assert q[1] >= abs(q[0])  # q in the cone
        assert np.dot([2.0, 1.0], q) == pytest.approx(5.0 + math.sqrt(5.0))

    def test_member_case_axis(self):
        cert = rank_one_certificate([0.0, 1.0], [1.0, 1.0])
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.0, 1.0])

    def test_tilt_case(self):
        # v_n < 0: witness (||v||^2 - eps) e_n - v_n v with the midpoint eps
        v = np.array([2.0, -1.0])
        cert = rank_one_certificate([0.0, 1.0], v)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        s = 5.0 - 1.0
        r = 1.0 * math.sqrt(s)
        eps_gap = 0.5 * (s - r)
        expected = (5.0 - eps_gap) * np.array([0.0, 1.0]) + 1.0 * v
        np.testing.assert_allclose(cert.primal, expected)
        assert verify_primal(np.outer([0.0, 1.0], v), cert.primal).ok

    def test_refuted_when_u_not_interior(self):
        cert = rank_one_certificate([1.0, 0.0], [2.0, 1.0])
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        assert verify_dual(np.outer([1.0, 0.0], [2.0, 1.0]), cert.dual)

    def test_refuted_when_v_reflected(self):
        cert = rank_one_certificate([0.0, 1.0], [0.5, -1.0])
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE

    def test_negative_corner_rejected(self):
        with pytest.raises(PreconditionError):
            rank_one_certificate([0.0, -1.0], [1.0, 1.0])

    def test_zero_vectors_rejected(self):
        with pytest.raises(ValueError):
            rank_one_certificate([0.0, 0.0], [1.0, 1.0])


class TestDiagonal:
    def test_positive_corner(self):
        cert = diagonal_certificate(np.diag([1.0, 1.0, 2.0]))
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.0, 0.0, 1.0])

    def test_negative_corner(self):
        D = np.diag([5.0, -1.0])
        cert = diagonal_certificate(D)
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        np.testing.assert_allclose(cert.dual, [0.0, -1.0])
        np.testing.assert_allclose(D.T @ cert.dual, [0.0, 1.0])

    def test_zero_corner(self):
        cert = diagonal_certificate(np.diag([3.0, 0.0]))
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        assert verify_dual(np.diag([3.0, 0.0]), cert.dual)

    def test_nondiagonal_rejected(self):
        with pytest.raises(StructureError):
            diagonal_certificate([[1.0, 2.0], [0.0, 1.0]])

    def test_characterization_parity(self, rng):
        for _ in range(100):
            d = rng.standard_normal(4)
            if abs(d[-1]) <= 1e-6:
                continue
            cert = diagonal_certificate(np.diag(d))
            expected = Verdict.SEMIPOSITIVE if d[-1] > 0 else Verdict.NOT_SEMIPOSITIVE
            assert cert.verdict is expected


class TestOrthogonal:
    def test_identity(self):
        cert = orthogonal_certificate(np.eye(3))
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.0, 0.0, 1.0])

    def test_rotation_by_pi_third(self):
        s3 = math.sqrt(3.0) / 2.0
        Q = np.array([[0.5, -s3], [s3, 0.5]])
        cert = orthogonal_certificate(Q)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [math.sqrt(3.0) / 4.0, 0.75])
        assert membership(cert.primal).cls is MembershipClass.INTERIOR
        assert membership(Q @ cert.primal).cls is MembershipClass.INTERIOR

    def test_reflection_refuted(self):
        Q = np.diag([1.0, -1.0])
        cert = orthogonal_certificate(Q)
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        np.testing.assert_allclose(cert.dual, [0.0, -1.0], atol=1e-12)
        np.testing.assert_allclose(Q.T @ cert.dual, [0.0, 1.0], atol=1e-12)

    def test_quarter_turn_is_band_case(self):
        Q = np.array([[0.0, -1.0], [1.0, 0.0]])
        cert = orthogonal_certificate(Q)
        assert cert.verdict is Verdict.NO_VERDICT

    def test_nonorthogonal_rejected(self):
        with pytest.raises(StructureError):
            orthogonal_certificate([[1.0, 1.0], [0.0, 1.0]])

    def test_characterization_parity(self, rng):
        for n in (2, 3, 4, 5, 6):
            for _ in range(20):
                Q = random_orthogonal(n, rng)
                if abs(Q[-1, -1]) <= 1e-6:
                    continue
                cert = orthogonal_certificate(Q)
                expected = (
                    Verdict.SEMIPOSITIVE if Q[-1, -1] > 0 else Verdict.NOT_SEMIPOSITIVE
                )
                assert cert.verdict is expected


class TestLowerTriangular:
    def test_positive_corner(self):
        A = np.array([[1.0, 0.0], [5.0, 2.0]])
        cert = lower_triangular_certificate(A)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.0, 1.0])
        np.testing.assert_allclose(A @ cert.primal, [0.0, 2.0])

    def test_column_gap_construction(self):
        A = np.array([[1.0, 0.0], [10.0, -1.0]])
        # alpha_1 = 1, beta = 1, a_21 = 10 -> c = 12/20 = 0.6
        x = _triangular_gap_witness(A, 0)
        np.testing.assert_allclose(x, [0.6, 1.0])
        np.testing.assert_allclose(A @ x, [0.6, 5.0])
        cert = lower_triangular_certificate(A)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.6, 1.0])

    def test_row_norm_construction(self):
        A = np.array([[1.0, 0.0], [10.0, -1.0]])
        # gamma = 1, beta = 1, ||a_2|| = sqrt(101) > 3
        y = _triangular_row_witness(A)
        norm_a2 = math.sqrt(101.0)
        np.testing.assert_allclose(
            y, [10.0 / (3.0 * norm_a2), -1.0 / (3.0 * norm_a2) + 2.0 / 3.0]
        )
        assert y == pytest.approx([0.3317, 0.6335], abs=1e-4)
        assert membership(y).cls is MembershipClass.INTERIOR
        assert verify_primal(A, y).ok

    def test_inconclusive_screen(self):
        # corner nonpositive and both gap conditions fail
        A = np.array([[3.0, 0.0], [0.5, -1.0]])
        cert = lower_triangular_certificate(A)
        assert cert.verdict is Verdict.NO_VERDICT
        assert decide(A).verdict is Verdict.NOT_SEMIPOSITIVE

    def test_not_triangular_rejected(self):
        with pytest.raises(StructureError):
            lower_triangular_certificate([[1.0, 2.0], [3.0, 4.0]])


class TestPerturbation:
    A = np.array([[1.0, 4.0], [5.0, 3.0]])

    def test_transfer_example(self):
        cert = perturbation_transfer(self.A, np.diag([1.0, 2.0]), [0.5, 1.0])
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose((self.A + np.diag([1.0, 2.0])) @ [0.5, 1.0], [5.0, 7.5])

    def test_zero_perturbation(self):
        cert = perturbation_transfer(self.A, np.zeros((2, 2)), [0.5, 1.0])
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.5, 1.0])

    def test_diagonal_vector_outside_cone(self):
        with pytest.raises(PreconditionError):
            perturbation_transfer(self.A, np.diag([-3.0, 1.0]), [0.5, 1.0])

    def test_invalid_witness(self):
        with pytest.raises(PreconditionError):
            perturbation_transfer(self.A, np.diag([1.0, 2.0]), [0.0, -1.0])


class TestBlockEmbed:
    def test_example(self):
        A = np.array([[1.0, 0.0, 0.0], [7.0, 1.0, 4.0], [8.0, 5.0, 3.0]])
        cert = block_embed_certificate(A, 2, [0.5, 1.0])
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.0, 0.5, 1.0])
        np.testing.assert_allclose(A @ cert.primal, [0.0, 4.5, 5.5])
        assert 20.25 < 30.25  # interior check done by verification

    def test_degenerate_full_block(self):
        A = np.array([[1.0, 4.0], [5.0, 3.0]])
        cert = block_embed_certificate(A, 2, [0.5, 1.0])
        assert cert.verdict is Verdict.SEMIPOSITIVE
        np.testing.assert_allclose(cert.primal, [0.5, 1.0])

    def test_structure_violation(self):
        A = np.array([[1.0, 0.5, 0.0], [7.0, 1.0, 4.0], [8.0, 5.0, 3.0]])
        with pytest.raises(StructureError):
            block_embed_certificate(A, 2, [0.5, 1.0])

    def test_bad_block_witness(self):
        A = np.array([[1.0, 0.0, 0.0], [7.0, 5.0, 7.0], [8.0, 6.0, 5.0]])
        with pytest.raises(PreconditionError):
            block_embed_certificate(A, 2, [0.0, 1.0])


class TestCopositive:
    def test_identity(self):
        assert copositive_screen(np.eye(2)).verdict is Verdict.SEMIPOSITIVE

    def test_positive_definite(self):
        A = np.array([[2.0, 1.0], [1.0, 2.0]])
        assert np.all(np.linalg.eigvalsh(A) > 0)
        cert = copositive_screen(A)
        assert cert.verdict is Verdict.SEMIPOSITIVE
        assert verify_primal(A, cert.primal).ok

    def test_indefinite_no_verdict(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(np.linalg.eigvalsh(A), [-1.0, 1.0])
        assert copositive_screen(A).verdict is Verdict.NO_VERDICT

    def test_psd_with_cone_kernel_direction(self):
        # PSD but not semipositive: the screen must not assert a verdict
        A = np.diag([1.0, 0.0])
        assert copositive_screen(A).verdict is Verdict.NO_VERDICT
        assert decide(A).verdict is Verdict.NOT_SEMIPOSITIVE

    def test_asymmetric_rejected(self):
        with pytest.raises(StructureError):
            copositive_screen([[1.0, 2.0], [0.0, 1.0]])


class TestInvarianceProperties:
    A = np.array([[1.0, 4.0], [5.0, 3.0]])

    def test_scaling(self):
        report = invariance_properties(self.A, [0.5, 1.0], 7.0, np.eye(2))
        assert report.scaled.verdict is Verdict.SEMIPOSITIVE
        assert report.permuted.verdict is Verdict.SEMIPOSITIVE

    def test_permutation_three(self):
        A = np.array([[1.0, 9.0, 0.0], [2.0, 3.0, 0.0], [0.0, 0.0, 2.0]])
        P = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        report = invariance_properties(A, [0.0, 0.0, 1.0], 2.0, P)
        assert report.permuted.verdict is Verdict.SEMIPOSITIVE

    def test_bad_alpha(self):
        with pytest.raises(PreconditionError):
            invariance_properties(self.A, [0.5, 1.0], -1.0, np.eye(2))

    def test_bad_permutation(self):
        P = np.array([[0.0, 1.0], [1.0, 0.0]])  # moves the last coordinate
        with pytest.raises(PreconditionError):
            invariance_properties(self.A, [0.5, 1.0], 1.0, P)


class TestSumNonClosure:
    def test_sum_of_semipositives_refuted(self):
        A = np.array([[1.0, 4.0], [5.0, 3.0]])
        B = np.array([[4.0, 3.0], [1.0, 2.0]])
        assert verify_primal(A, [0.5, 1.0]).ok
        assert verify_primal(B, [-0.5, 1.0]).ok
        cert = decide(A + B)
        assert cert.verdict is Verdict.NOT_SEMIPOSITIVE
        assert verify_dual(A + B, cert.dual)


class TestSoundnessSweeps:
    """Every emitted witness must re-verify across generator families."""

    def test_screen_families(self, rng):
        emitted = 0
        for _ in range(100):
            n = int(rng.integers(2, 5))
            A = rng.standard_normal((n, n))
            kind = rng.integers(0, 3)
            if kind == 0:  # interior last column
                A[:, -1] = 0.0
                A[-1, -1] = 1.0 + rng.random() * 3
            elif kind == 1:  # dominant last row
                A[:-1] *= 0.1
                A[-1] *= 10.0
                A[-1, -1] = abs(A[-1, -1])
            cert = structural_screen(A)
            if cert.verdict is Verdict.SEMIPOSITIVE:
                emitted += 1
                assert verify_primal(A, cert.primal).ok
            elif cert.verdict is Verdict.NOT_SEMIPOSITIVE:
                assert verify_dual(A, cert.dual)
        assert emitted > 30

    def test_rank_one_families(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 5))
            u = rng.standard_normal(n)
            u[-1] = abs(u[-1]) + np.linalg.norm(u[:-1]) + 0.1  # interior
            v = rng.standard_normal(n)
            if np.linalg.norm(v) == 0:
                continue
            cert = rank_one_certificate(u, v)
            if cert.verdict is Verdict.SEMIPOSITIVE:
                assert verify_primal(np.outer(u, v), cert.primal).ok
            elif cert.verdict is Verdict.NOT_SEMIPOSITIVE:
                assert verify_dual(np.outer(u, v), cert.dual)
