"""Dense complex Hermitian kernel.

Eigendecomposition (numpy engine plus a self-contained cyclic Jacobi),
inertia, Loewner-order comparison, spectral functional calculus, and
invertibility margins. All operations are pure functions; arrays passed in
are never mutated.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DomainViolationError, MalformedInputError

__all__ = [
    "EigenDecomposition",
    "Inertia",
    "OrderVerdict",
    "as_square",
    "as_hermitian",
    "herm_part",
    "frob",
    "opnorm",
    "hermitian_eigen",
    "jacobi_eigen",
    "inertia",
    "loewner_compare",
    "is_psd",
    "spectral_apply",
    "invertibility_margin",
    "is_invertible",
    "spectral_pinv",
    "sqrt_psd",
]


class EigenDecomposition(NamedTuple):
    """Eigenvalues (ascending, real) and a unitary matrix of column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray


class Inertia(NamedTuple):
    """Counts of positive, (numerically) zero, and negative eigenvalues."""

    n_pos: int
    n_zero: int
    n_neg: int

    @property
    def dim(self) -> int:
        return self.n_pos + self.n_zero + self.n_neg


def as_square(X: Iterable, name: str = "matrix") -> np.ndarray:
    """Coerce to a square complex ndarray; reject non-finite entries."""
    M = np.asarray(X, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise MalformedInputError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise MalformedInputError(f"{name} has non-finite entries")
    return M


def herm_part(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    return (M + M.conj().T) / 2.0


def frob(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, "fro"))


def opnorm(M: np.ndarray) -> float:
    """Spectral (largest singular value) norm."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def as_hermitian(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL, name: str = "matrix") -> np.ndarray:
    """Validate hermiticity within herm_tol and return the exactly Hermitian part.

    ||X - X*||_F <= herm_tol*(1 + ||X||_F) is required; the symmetrized
    matrix is returned so downstream code can rely on exact symmetry.
    """
    M = as_square(X, name)
    dev = frob(M - M.conj().T)
    if dev > tol.herm_tol * (1.0 + frob(M)):
        raise MalformedInputError(f"{name} is not Hermitian: ||X - X*||_F = {dev:.3e}")
    return herm_part(M)


def _sorted_eigen(values: np.ndarray, vectors: np.ndarray) -> EigenDecomposition:
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(np.ascontiguousarray(values[order].real), np.ascontiguousarray(vectors[:, order]))


def jacobi_eigen(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL, max_sweeps: int = 60) -> EigenDecomposition:
    """Cyclic Jacobi eigendecomposition for complex Hermitian matrices.

    Each rotation zeroes one off-diagonal pair: a diagonal phase makes the
    pivot entry real, then a real Givens rotation annihilates it. Sweeps
    repeat until the off-diagonal Frobenius mass falls below
    eig_tol * ||X||_F / 10.
    """
    A = as_hermitian(X, tol).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    if n <= 1:
        return EigenDecomposition(np.diag(A).real.copy(), V)
    scale = frob(A)
    if scale == 0.0:
        return EigenDecomposition(np.zeros(n), V)
    target = tol.eig_tol * scale / 10.0
    for _ in range(max_sweeps):
        # direct off-diagonal mass; the difference frob(A)^2 - sum(diag^2)
        # cancels catastrophically once the sweeps are nearly converged
        off = frob(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= target / (n * n):
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                ph = np.conj(apq) / abs(apq)
                b = abs(apq)
                tau = (aqq - app) / (2.0 * b)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # 2x2 unitary [[c, s], [-ph*s, ph*c]] zeroes the (p,q) entry
                J = np.array([[c, s], [-ph * s, ph * c]], dtype=complex)
                A[:, [p, q]] = A[:, [p, q]] @ J
                A[[p, q], :] = J.conj().T @ A[[p, q], :]
                A[p, q] = 0.0
                A[q, p] = 0.0
                V[:, [p, q]] = V[:, [p, q]] @ J
    return _sorted_eigen(np.diag(A).real, V)


def hermitian_eigen(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL, engine: str = "numpy") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, values ascending.

    engine="numpy" uses LAPACK via np.linalg.eigh; engine="jacobi" is the
    self-contained cyclic Jacobi solver. Both satisfy the same residual
    contract (checked in the verification suites).
    """
    if engine == "jacobi":
        return jacobi_eigen(X, tol)
    if engine != "numpy":
        raise MalformedInputError(f"unknown eigen engine {engine!r}")
    H = as_hermitian(X, tol)
    values, vectors = np.linalg.eigh(H)
    return EigenDecomposition(values, vectors)


def inertia(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> Inertia:
    """Signature of a Hermitian matrix with the relative psd_tol cutoff.

    Eigenvalues above psd_tol*(1+||X||_2) count positive, below the negated
    cutoff negative, the rest zero.
    """
    values = hermitian_eigen(X, tol).values
    if values.size == 0:
        return Inertia(0, 0, 0)
    cut = tol.psd_tol * (1.0 + float(np.max(np.abs(values))))
    n_pos = int(np.sum(values > cut))
    n_neg = int(np.sum(values < -cut))
    return Inertia(n_pos, values.size - n_pos - n_neg, n_neg)


@dataclasses.dataclass(frozen=True)
class OrderVerdict:
    """Loewner comparison of a Hermitian pair, driven by eigenvalues of Y - X.

    scale = 1 + ||Y - X||_2. The boolean views overlap by design (equal
    implies leq and geq); `verdict` reports the most specific label.
    """

    min_eig: float
    max_eig: float
    scale: float
    psd_tol: float
    inv_margin: float

    @property
    def leq(self) -> bool:
        return self.min_eig >= -self.psd_tol * self.scale

    @property
    def geq(self) -> bool:
        return self.max_eig <= self.psd_tol * self.scale

    @property
    def equal(self) -> bool:
        return self.leq and self.geq

    @property
    def lt(self) -> bool:
        return self.min_eig >= self.inv_margin * self.scale

    @property
    def gt(self) -> bool:
        return self.max_eig <= -self.inv_margin * self.scale

    @property
    def incomparable(self) -> bool:
        return self.min_eig < -self.psd_tol * self.scale and self.max_eig > self.psd_tol * self.scale

    @property
    def verdict(self) -> str:
        if self.equal:
            return "equal"
        if self.lt:
            return "lt"
        if self.gt:
            return "gt"
        if self.leq:
            return "leq"
        if self.geq:
            return "geq"
        return "incomparable"


def loewner_compare(X: Iterable, Y: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> OrderVerdict:
    """Compare Hermitian X, Y in the Loewner order via eigenvalues of Y - X."""
    A = as_hermitian(X, tol, "X")
    B = as_hermitian(Y, tol, "Y")
    if A.shape != B.shape:
        raise MalformedInputError(f"dimension mismatch {A.shape} vs {B.shape}")
    values = hermitian_eigen(B - A, tol).values
    if values.size == 0:
        return OrderVerdict(0.0, 0.0, 1.0, tol.psd_tol, tol.inv_margin)
    lo = float(values[0])
    hi = float(values[-1])
    scale = 1.0 + max(abs(lo), abs(hi))
    return OrderVerdict(lo, hi, scale, tol.psd_tol, tol.inv_margin)


def is_psd(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    H = as_hermitian(X, tol)
    return loewner_compare(np.zeros_like(H), H, tol).leq


def _check_guard(values: np.ndarray, domain: Optional[tuple], poles: Sequence[float], margin: float) -> None:
    if domain is not None:
        a, b = domain
        if np.isfinite(a) and np.any(values <= a + margin):
            raise DomainViolationError(f"eigenvalue {values.min():.6g} within margin of domain edge {a}")
        if np.isfinite(b) and np.any(values >= b - margin):
            raise DomainViolationError(f"eigenvalue {values.max():.6g} within margin of domain edge {b}")
    for pole in poles:
        if np.any(np.abs(values - pole) <= margin):
            raise DomainViolationError(f"eigenvalue within margin of pole at {pole}")


def spectral_apply(
    X: Iterable,
    fn: Callable[[float], float],
    domain: Optional[tuple] = None,
    poles: Sequence[float] = (),
    tol: ToleranceConfig = DEFAULT_TOL,
    engine: str = "numpy",
) -> np.ndarray:
    """Functional calculus: V diag(fn(lambda_i)) V* for Hermitian X.

    `domain` is an open interval (a, b) (use +-inf for unbounded ends) and
    `poles` lists excluded points; eigenvalues within inv_margin of an edge
    or pole raise DomainViolationError. Real-valued fn gives Hermitian output.
    """
    decomp = hermitian_eigen(X, tol, engine=engine)
    _check_guard(decomp.values, domain, poles, tol.inv_margin)
    mapped = np.array([float(fn(float(v))) for v in decomp.values])
    if not np.all(np.isfinite(mapped)):
        raise DomainViolationError("function value not finite on the spectrum")
    out = (decomp.vectors * mapped) @ decomp.vectors.conj().T
    return herm_part(out)


def invertibility_margin(X: Iterable) -> float:
    """Smallest singular value (0 means exactly singular)."""
    M = as_square(X)
    if M.shape[0] == 0:
        return np.inf
    return float(np.linalg.svd(M, compute_uv=False)[-1])


def is_invertible(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """sigma_min above the relative margin inv_margin*(1+||X||_2)."""
    M = as_square(X)
    if M.shape[0] == 0:
        return True
    sv = np.linalg.svd(M, compute_uv=False)
    return float(sv[-1]) > tol.inv_margin * (1.0 + float(sv[0]))


def spectral_pinv(A: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse of a Hermitian matrix, computed spectrally.

    Eigenvalues above psd_tol*(1+||A||_2) in magnitude are inverted, the
    rest are zeroed.
    """
    decomp = hermitian_eigen(A, tol)
    values = decomp.values
    if values.size == 0:
        return np.zeros((0, 0), dtype=complex)
    cut = tol.psd_tol * (1.0 + float(np.max(np.abs(values))))
    inv = np.where(np.abs(values) > cut, 1.0 / np.where(np.abs(values) > cut, values, 1.0), 0.0)
    return herm_part((decomp.vectors * inv) @ decomp.vectors.conj().T)


def sqrt_psd(A: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a PSD Hermitian matrix.

    Eigenvalues below the rank cutoff psd_tol*(1+||A||_2) are treated as
    exact zeros (same rank decision as spectral_pinv); taking square roots
    of eps-level noise would otherwise smear sqrt(eps) into the kernel.
    """
    decomp = hermitian_eigen(A, tol)
    values = decomp.values
    if values.size == 0:
        return np.zeros((0, 0), dtype=complex)
    cut = tol.psd_tol * (1.0 + float(np.max(np.abs(values))))
    if float(values[0]) < -cut:
        raise DomainViolationError(f"matrix is not PSD: min eigenvalue {values[0]:.3e}")
    root = np.sqrt(np.where(values > cut, values, 0.0))
    return herm_part((decomp.vectors * root) @ decomp.vectors.conj().T)
