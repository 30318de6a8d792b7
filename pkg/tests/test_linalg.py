"""Eigendecomposition, inertia, and functional calculus against closed-form oracles."""

import numpy as np
import pytest

from matorder.config import DEFAULT_TOL
from matorder.errors import DomainViolationError, MalformedInputError
from matorder.linalg import (
    as_hermitian,
    frob,
    herm_part,
    hermitian_eigen,
    inertia,
    invertibility_margin,
    is_invertible,
    jacobi_eigen,
    opnorm,
    spectral_apply,
    spectral_pinv,
    sqrt_psd,
)
from matorder.sampling import random_hermitian, random_psd


def charpoly_roots_2x2(A):
    # oracle: explicit quadratic formula for the 2x2 Hermitian spectrum
    a = float(np.real(A[0, 0]))
    c = float(np.real(A[1, 1]))
    b = abs(A[0, 1])
    mid = 0.5 * (a + c)
    rad = np.hypot(0.5 * (a - c), b)
    return np.array([mid - rad, mid + rad])


def charpoly_roots_3x3(A):
    # oracle: roots of the characteristic cubic from trace identities
    t1 = float(np.real(np.trace(A)))
    t2 = float(np.real(np.trace(A @ A)))
    det = float(np.real(np.linalg.det(A)))
    c2 = -t1
    c1 = 0.5 * (t1 * t1 - t2)
    c0 = -det
    roots = np.roots([1.0, c2, c1, c0])
    return np.sort(np.real(roots))


def test_eigen_matches_quadratic_formula():
    rng = np.random.default_rng(0)
    for _ in range(60):
        A = random_hermitian(rng, 2)
        got = hermitian_eigen(A).values
        want = charpoly_roots_2x2(A)
        assert np.max(np.abs(got - want)) <= 1e-10 * (1.0 + opnorm(A))


def test_eigen_matches_cubic_roots():
    rng = np.random.default_rng(1)
    for _ in range(60):
        A = random_hermitian(rng, 3)
        got = hermitian_eigen(A).values
        want = charpoly_roots_3x3(A)
        assert np.max(np.abs(got - want)) <= 1e-8 * (1.0 + opnorm(A))


def test_jacobi_agrees_with_default_engine():
    rng = np.random.default_rng(2)
    for n in (2, 3, 5, 8):
        A = random_hermitian(rng, n)
        slow = jacobi_eigen(A)
        fast = hermitian_eigen(A)
        assert np.max(np.abs(slow.values - fast.values)) <= 1e-9 * (1.0 + opnorm(A))
        # both must reconstruct A and be unitary
        for d in (slow, fast):
            V, w = d.vectors, d.values
            assert frob((V * w) @ V.conj().T - A) <= 1e-9 * (1.0 + frob(A))
            assert frob(V.conj().T @ V - np.eye(n)) <= 1e-10 * n


def test_eigen_on_diagonal_is_exact():
    A = np.diag([3.0, -1.0, 0.0, 7.5]).astype(complex)
    d = hermitian_eigen(A)
    assert np.allclose(d.values, [-1.0, 0.0, 3.0, 7.5], atol=1e-14)


def test_inertia_reads_off_diagonal_signs():
    A = np.diag([2.0, 1e-3, 0.0, -4.0, -1.0]).astype(complex)
    sig = inertia(A)
    assert (sig.n_pos, sig.n_zero, sig.n_neg) == (2, 1, 2)


def test_inertia_invariant_under_congruence():
    # oracle: Sylvester invariance, checked with random invertible frames
    rng = np.random.default_rng(3)
    A = np.diag([1.0, 1.0, -1.0, 0.0]).astype(complex)
    for _ in range(25):
        T = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) + 3 * np.eye(4)
        B = T @ A @ T.conj().T
        assert tuple(inertia(herm_part(B))) == (2, 1, 1)


def test_as_hermitian_rejects_skew_input():
    Z = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    with pytest.raises(MalformedInputError):
        as_hermitian(Z)


def test_sqrt_psd_squares_back():
    rng = np.random.default_rng(4)
    for _ in range(40):
        A = random_psd(rng, 4)
        R = sqrt_psd(A)
        assert frob(R @ R - A) <= 1e-9 * (1.0 + frob(A))
        assert float(hermitian_eigen(R).values[0]) >= -1e-12


def test_sqrt_psd_keeps_exact_kernel():
    # rank-2 PSD with an exact null vector: the root must share the kernel
    rng = np.random.default_rng(5)
    V = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
    A = herm_part(V @ np.diag([1.7, 0.4, 0.0, 0.0]) @ V.conj().T)
    R = sqrt_psd(A)
    kernel = V[:, 2:]
    assert opnorm(R @ kernel) <= 1e-12


def test_sqrt_psd_rejects_indefinite():
    with pytest.raises(DomainViolationError):
        sqrt_psd(np.diag([1.0, -0.5]).astype(complex))


def test_spectral_pinv_moore_penrose():
    # oracle: the four Moore-Penrose identities on a rank-deficient matrix
    rng = np.random.default_rng(6)
    V = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))[0]
    A = herm_part(V @ np.diag([2.0, 1.0, 0.5, 0.0, 0.0]) @ V.conj().T)
    P = spectral_pinv(A)
    assert frob(A @ P @ A - A) <= 1e-10
    assert frob(P @ A @ P - P) <= 1e-10
    assert frob(herm_part(A @ P) - A @ P) <= 1e-10
    assert frob(herm_part(P @ A) - P @ A) <= 1e-10


def test_spectral_apply_matches_scalar_closed_form():
    rng = np.random.default_rng(7)
    for _ in range(20):
        A = random_psd(rng, 3) + 0.5 * np.eye(3)
        S = spectral_apply(A, np.sqrt)
        assert frob(S @ S - A) <= 1e-10 * (1.0 + frob(A))
        Inv = spectral_apply(A, lambda x: 1.0 / x)
        assert frob(Inv - np.linalg.inv(A)) <= 1e-9 * (1.0 + opnorm(Inv))


def test_spectral_apply_guards_domain():
    A = np.diag([1.0, -2.0]).astype(complex)
    with pytest.raises(DomainViolationError):
        spectral_apply(A, np.sqrt, domain=(0.0, np.inf))


def test_invertibility_margin_and_flag():
    assert invertibility_margin(np.eye(3)) == pytest.approx(1.0)
    assert is_invertible(np.eye(3))
    assert not is_invertible(np.diag([1.0, 0.0]).astype(complex))


def test_norm_helpers():
    A = np.array([[3.0, 4.0], [0.0, 0.0]], dtype=complex)
    assert frob(A) == pytest.approx(5.0)
    assert opnorm(np.diag([2.0, -7.0]).astype(complex)) == pytest.approx(7.0)
