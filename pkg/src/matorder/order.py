"""Loewner order structure.

Operator intervals, the rank-one trace test, affine order isomorphisms
between an interval [A, B] and the effect algebra of rank(B - A), and the
two-projection dominance radius in dimension 2.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Iterable, Optional

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DomainViolationError, MalformedInputError
from .linalg import (
    as_hermitian,
    herm_part,
    hermitian_eigen,
    inertia,
    loewner_compare,
    spectral_pinv,
)

__all__ = [
    "OperatorInterval",
    "AffineIntervalIso",
    "interval_contains",
    "rank_one_leq",
    "affine_interval_iso",
    "projection_dominance_radius",
]


@dataclasses.dataclass(frozen=True)
class OperatorInterval:
    """Interval in the Loewner order; a missing bound encodes +-infinity.

    lower_closed/upper_closed pick between <= and < at each present end.
    """

    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self) -> None:
        lower = None if self.lower is None else as_hermitian(self.lower, name="lower bound")
        upper = None if self.upper is None else as_hermitian(self.upper, name="upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower is not None and upper is not None:
            if lower.shape != upper.shape:
                raise MalformedInputError("interval bounds have mismatched dimensions")
            cmp = loewner_compare(lower, upper)
            if self.lower_closed and self.upper_closed:
                if not cmp.leq:
                    raise MalformedInputError("need lower <= upper for a closed interval")
            elif not cmp.lt:
                raise MalformedInputError("need lower < upper when an endpoint is open")

    @property
    def dim(self) -> Optional[int]:
        for bound in (self.lower, self.upper):
            if bound is not None:
                return bound.shape[0]
        return None


def interval_contains(J: OperatorInterval, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Membership of Hermitian X in the interval per its closedness flags."""
    H = as_hermitian(X, tol)
    if J.dim is not None and H.shape[0] != J.dim:
        raise MalformedInputError(f"dimension mismatch: X is {H.shape[0]}, interval is {J.dim}")
    if J.lower is not None:
        cmp = loewner_compare(J.lower, H, tol)
        if not (cmp.leq if J.lower_closed else cmp.lt):
            return False
    if J.upper is not None:
        cmp = loewner_compare(H, J.upper, tol)
        if not (cmp.leq if J.upper_closed else cmp.lt):
            return False
    return True


def rank_one_leq(R: Iterable, A: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Order test R <= A for rank-one PSD R against PSD A.

    True iff range(R) lies inside range(A) and tr(pinv(A) R) <= 1 + psd_tol.
    Range inclusion is tested by projecting R's range vector onto the
    eigenvectors of A below the psd_tol rank cutoff, which avoids forming an
    ill-conditioned pseudo-inverse of a nearly singular A.
    """
    R = as_hermitian(R, tol, "R")
    A = as_hermitian(A, tol, "A")
    if R.shape != A.shape:
        raise MalformedInputError("dimension mismatch")
    sig = inertia(R, tol)
    if sig.n_neg != 0 or sig.n_pos != 1:
        raise MalformedInputError(f"R must be PSD of rank one, inertia is {tuple(sig)}")
    sigA = inertia(A, tol)
    if sigA.n_neg != 0:
        raise MalformedInputError("A must be PSD")

    decompR = hermitian_eigen(R, tol)
    weight = float(decompR.values[-1])
    vec = decompR.vectors[:, -1] * math.sqrt(max(weight, 0.0))

    decompA = hermitian_eigen(A, tol)
    cutA = tol.psd_tol * (1.0 + float(np.max(np.abs(decompA.values), initial=0.0)))
    kernel = decompA.vectors[:, np.abs(decompA.values) <= cutA]
    leak = float(np.linalg.norm(kernel.conj().T @ vec))
    if leak > math.sqrt(tol.psd_tol) * (1.0 + float(np.linalg.norm(vec))):
        return False
    trace = float(np.real(np.vdot(vec, spectral_pinv(A, tol) @ vec)))
    return trace <= 1.0 + tol.psd_tol


@dataclasses.dataclass(frozen=True)
class AffineIntervalIso:
    """Order isomorphism between [lower, upper] and the effect algebra E_r.

    forward(X) = S* (X - lower) S with S = V diag(1/sqrt(mu_i)) built from
    the top-r eigenpairs of D = upper - lower; backward inverts it on the
    range of D. forward(lower) = 0 and forward(upper) = I_r.
    """

    lower: np.ndarray
    upper: np.ndarray
    rank: int
    isometry: np.ndarray        # n x r eigenvectors spanning range(upper - lower)
    scaling: np.ndarray         # positive eigenvalues mu_1..mu_r of upper - lower

    def forward(self, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
        H = as_hermitian(X, tol)
        S = self.isometry / np.sqrt(self.scaling)
        return herm_part(S.conj().T @ (H - self.lower) @ S)

    def backward(self, Y: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
        H = as_hermitian(Y, tol)
        if H.shape[0] != self.rank:
            raise MalformedInputError(f"expected a {self.rank}x{self.rank} effect")
        S = self.isometry * np.sqrt(self.scaling)
        return herm_part(self.lower + S @ H @ S.conj().T)


def affine_interval_iso(A: Iterable, B: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> AffineIntervalIso:
    """Build the affine order isomorphism [A, B] -> E_r, r = rank(B - A)."""
    A = as_hermitian(A, tol, "A")
    B = as_hermitian(B, tol, "B")
    if A.shape != B.shape:
        raise MalformedInputError("dimension mismatch")
    cmp = loewner_compare(A, B, tol)
    if not cmp.leq:
        raise DomainViolationError("need A <= B")
    if cmp.equal:
        raise DomainViolationError("need A != B")
    decomp = hermitian_eigen(B - A, tol)
    cut = tol.psd_tol * (1.0 + float(np.max(np.abs(decomp.values))))
    keep = decomp.values > cut
    rank = int(np.sum(keep))
    return AffineIntervalIso(
        lower=A,
        upper=B,
        rank=rank,
        isometry=np.ascontiguousarray(decomp.vectors[:, keep]),
        scaling=np.ascontiguousarray(decomp.values[keep]),
    )


def projection_dominance_radius(c: float, d: float) -> float:
    """Radius threshold for dE <= P + cQ with orthogonal rank-one P, Q in dim 2.

    For weights 0 <= c < d <= 1 and rank-one projections E, the dominance
    dE <= P + cQ holds exactly when ||P - E|| <= sqrt((c - c d)/(d - c d)).
    """
    if not (0.0 <= c < d <= 1.0):
        raise DomainViolationError(f"need 0 <= c < d <= 1, got c={c}, d={d}")
    return math.sqrt((c - c * d) / (d - c * d))
