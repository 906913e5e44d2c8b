import numpy as np
import pytest
from helpers import brute_partial_trace

from progchan import (
    ContractError,
    DimensionError,
    devectorize,
    equal_up_to_global_phase,
    haar_unitary,
    hermitian_eig,
    is_density,
    is_hermitian,
    is_unitary,
    kron,
    operator_norm,
    partial_trace,
    pauli,
    vectorize,
)

I2 = np.eye(2)
I4 = np.eye(4)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(I2, I2), I4)

    def test_xx_antidiagonal(self):
        np.testing.assert_array_equal(kron(pauli(1), pauli(1)), np.fliplr(I4))

    def test_zz_transpose(self):
        np.testing.assert_array_equal(kron(pauli(3), pauli(3).T), np.diag([1, -1, -1, 1]))

    def test_mixed_product_rule(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
            lhs = kron(a, b) @ kron(c, d)
            np.testing.assert_allclose(lhs, kron(a @ c, b @ d), atol=1e-12)

    def test_dimension_overflow(self):
        with pytest.raises(DimensionError):
            kron(I4, I2)
        with pytest.raises(DimensionError):
            kron(I4, I4)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            kron(np.ones((2, 3)), I2)


class TestPartialTrace:
    def test_factorized(self):
        rng = np.random.default_rng(1)
        sigma = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        proj = np.array([[1, 0], [0, 0]], dtype=complex)
        np.testing.assert_allclose(
            partial_trace(kron(proj, sigma), 2), np.trace(sigma) * proj, atol=1e-14
        )

    def test_identity(self):
        np.testing.assert_allclose(partial_trace(I4, 1), 2 * I2, atol=1e-15)

    def test_against_brute_force(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            for sub in (1, 2):
                np.testing.assert_allclose(
                    partial_trace(m, sub), brute_partial_trace(m, sub), atol=1e-13
                )

    def test_kron_collapses_to_trace(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        np.testing.assert_allclose(partial_trace(kron(a, b), 2), np.trace(b) * a, atol=1e-13)
        np.testing.assert_allclose(partial_trace(kron(a, b), 1), np.trace(a) * b, atol=1e-13)

    def test_trace_preserved(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            assert abs(np.trace(partial_trace(m, 2)) - np.trace(m)) < 1e-12

    def test_wrong_dim(self):
        with pytest.raises(DimensionError):
            partial_trace(I2, 2)
        with pytest.raises(DimensionError):
            partial_trace(I4, 3)


class TestVectorize:
    def test_identity(self):
        np.testing.assert_array_equal(vectorize(I2), [1, 0, 0, 1])

    def test_round_trip_exact(self):
        rng = np.random.default_rng(5)
        for dim in (2, 4):
            a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            np.testing.assert_array_equal(devectorize(vectorize(a)), a)

    def test_sandwich_identity(self):
        # (A x B^T) vec(X) = vec(A X B)
        rng = np.random.default_rng(6)
        for _ in range(30):
            a, b, x = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
            lhs = kron(a, b.T) @ vectorize(x)
            np.testing.assert_allclose(lhs, vectorize(a @ x @ b), atol=1e-13)

    def test_projector_vectorizes_to_conjugate_pair(self):
        rng = np.random.default_rng(7)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        lhs = vectorize(np.outer(v, v.conj()))
        np.testing.assert_allclose(lhs, np.kron(v, v.conj()), atol=1e-14)

    def test_bad_size(self):
        with pytest.raises(DimensionError):
            devectorize(np.ones(5))


class TestHermitianEig:
    def test_pauli_z(self):
        evals, vecs = hermitian_eig(pauli(3))
        np.testing.assert_allclose(evals, [1, -1], atol=1e-15)
        np.testing.assert_allclose(np.abs(vecs), I2, atol=1e-15)

    def test_degenerate_identity(self):
        evals, vecs = hermitian_eig(I4)
        np.testing.assert_allclose(evals, np.ones(4), atol=1e-15)
        np.testing.assert_allclose(vecs.conj().T @ vecs, I4, atol=1e-12)

    def test_construct_then_decompose(self):
        rng = np.random.default_rng(8)
        for dim in (2, 4):
            for _ in range(50):
                q = haar_unitary(dim, rng)
                lam = np.sort(rng.normal(size=dim))[::-1]
                h = q @ np.diag(lam) @ q.conj().T
                evals, vecs = hermitian_eig(h)
                np.testing.assert_allclose(evals, lam, atol=1e-10)
                np.testing.assert_allclose(
                    vecs @ np.diag(evals) @ vecs.conj().T, h, atol=1e-10
                )
                np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(dim), atol=1e-10)

    def test_descending_and_deterministic(self):
        rng = np.random.default_rng(9)
        h = rng.normal(size=(4, 4))
        h = h + h.T
        e1, v1 = hermitian_eig(h)
        e2, v2 = hermitian_eig(h.copy())
        assert np.all(np.diff(e1) <= 0)
        np.testing.assert_array_equal(v1, v2)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ContractError):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestOperatorNorm:
    def test_values(self):
        assert operator_norm(I2) == pytest.approx(1.0, abs=1e-14)
        assert operator_norm(2 * pauli(1)) == pytest.approx(2.0, abs=1e-14)
        assert operator_norm(np.diag([3.0, 4.0, 0.0, 0.0])) == pytest.approx(4.0, abs=1e-14)

    def test_unitary_norm_one(self):
        rng = np.random.default_rng(10)
        for dim in (2, 4):
            for _ in range(20):
                assert operator_norm(haar_unitary(dim, rng)) == pytest.approx(1.0, abs=1e-10)


class TestPredicates:
    def test_basic(self):
        assert is_unitary(pauli(2))
        assert not is_unitary(2 * I2)
        assert is_hermitian(pauli(1))
        assert not is_hermitian(1j * pauli(1))
        assert is_density(I2 / 2)
        assert not is_density(I2)
        assert not is_density(np.diag([1.5, -0.5]))


class TestGlobalPhase:
    def test_sign(self):
        assert equal_up_to_global_phase(I2, -I2, 1e-12)

    def test_distinct(self):
        assert not equal_up_to_global_phase(pauli(1), pauli(3), 1e-12)

    def test_random_phase(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            v = haar_unitary(4, rng)
            assert equal_up_to_global_phase(v, np.exp(1j * np.pi / 7) * v, 1e-12)
            assert not equal_up_to_global_phase(v, haar_unitary(4, rng), 1e-6)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            equal_up_to_global_phase(I2, I4, 1e-12)
