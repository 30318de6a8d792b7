"""Block-corner order isomorphisms, signature classification, effect maps.

The block map for corner size m acts on Hermitian matrices whose leading
m x m corner has a fixed inertia (p, 0, m-p): it inverts the corner with a
sign flip, twists the off-diagonal strip by +-i, and takes a Schur
complement in the lower block. It is an involution up to swapping p with
m - p, is reproduced blockwise by negating the inverse of a bordered
embedding into dimension 2n - m, and every maximal local order isomorphism
is equivalent to exactly one such map, which makes the ordered pair (m, p)
a complete invariant. The effect-algebra section implements the two
canonical automorphism forms of the unit operator interval [0, I] and the
almost-everywhere-continuous order embeddings with overridable endpoint
values.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.linalg import sqrtm

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DomainViolationError, MalformedInputError
from .linalg import (
    as_hermitian,
    as_square,
    herm_part,
    hermitian_eigen,
    inertia,
    is_invertible,
    loewner_compare,
    opnorm,
    spectral_apply,
)

__all__ = [
    "BlockMapSpec",
    "SignatureClass",
    "in_block_domain",
    "block_map_apply",
    "bordered_embedding",
    "bordered_arrangement",
    "signature_class",
    "are_equivalent",
    "class_count",
    "enumerate_signatures",
    "growth_direction",
    "EffectAutoSpec",
    "FpqSpec",
    "EffectEmbeddingSpec",
    "as_effect",
    "effect_automorphism",
    "rational_effect_automorphism",
    "rational_effect_factors",
    "effect_embedding_map",
    "endpoint_continuity",
]


@dataclasses.dataclass(frozen=True)
class BlockMapSpec:
    """Corner data (ambient dim n, corner size m, positive count p)."""

    n: int
    m: int
    p: int

    def __post_init__(self) -> None:
        if not (0 <= self.p <= self.m <= self.n):
            raise MalformedInputError(f"need 0 <= p <= m <= n, got (n={self.n}, m={self.m}, p={self.p})")

    @property
    def dual(self) -> "BlockMapSpec":
        """Parameters of the inverse map (positive count flipped to m - p)."""
        return BlockMapSpec(self.n, self.m, self.m - self.p)


def in_block_domain(spec: BlockMapSpec, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff the leading m x m corner of X has inertia (p, 0, m - p)."""
    H = as_hermitian(X, tol, "X")
    if H.shape[0] != spec.n:
        raise MalformedInputError("dimension mismatch")
    if spec.m == 0:
        return spec.p == 0
    corner = H[: spec.m, : spec.m]
    return tuple(inertia(corner, tol)) == (spec.p, 0, spec.m - spec.p)


def block_map_apply(spec: BlockMapSpec, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Invert the corner, twist the strip by +-i, Schur-complement the rest.

        [[X11, X12], [X12*, X22]] -> [[-X11^{-1},            i X11^{-1} X12],
                                      [-i X12* X11^{-1},  X22 - X12* X11^{-1} X12]]

    Maps the (m, p) domain onto the (m, m-p) domain; applying the map for
    the flipped count undoes it.
    """
    H = as_hermitian(X, tol, "X")
    if H.shape[0] != spec.n:
        raise MalformedInputError("dimension mismatch")
    m = spec.m
    if m == 0:
        return H.copy()
    if not in_block_domain(spec, H, tol):
        raise DomainViolationError(f"corner inertia is not ({spec.p}, 0, {spec.m - spec.p})")
    X11 = H[:m, :m]
    if not is_invertible(X11, tol):
        raise DomainViolationError("corner is numerically singular")
    X12 = H[:m, m:]
    X22 = H[m:, m:]
    K = np.linalg.solve(X11, X12)  # X11^{-1} X12
    out = np.zeros_like(H)
    out[:m, :m] = -np.linalg.inv(X11)
    out[:m, m:] = 1j * K
    out[m:, :m] = -1j * K.conj().T
    out[m:, m:] = X22 - X12.conj().T @ K
    return herm_part(out)


def bordered_embedding(m: int, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Border X with +-i identity strips into dimension 2n - m.

        [[X11, X12, 0], [X12*, X22, iI], [0, -iI, 0]]

    For X in the (m, p) block domain the negated inverse of the embedding
    reproduces every block of block_map_apply (in the arrangement built by
    bordered_arrangement), and its inertia is (n + p - m, 0, n - p).
    """
    H = as_hermitian(X, tol, "X")
    n = H.shape[0]
    if not 0 <= m <= n:
        raise MalformedInputError("need 0 <= m <= dim(X)")
    k = n - m
    out = np.zeros((2 * n - m, 2 * n - m), dtype=complex)
    out[:n, :n] = H
    out[m:n, n:] = 1j * np.eye(k)
    out[n:, m:n] = -1j * np.eye(k)
    return out


def bordered_arrangement(m: int, Y: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The block layout that -bordered_embedding(m, X)^{-1} lands in.

        [[Y11, 0, Y12], [0, 0, -iI], [Y21, iI, Y22]]

    with Y = block_map_apply(spec, X) carved into the usual corner blocks.
    """
    H = as_hermitian(Y, tol, "Y")
    n = H.shape[0]
    if not 0 <= m <= n:
        raise MalformedInputError("need 0 <= m <= dim(Y)")
    k = n - m
    out = np.zeros((2 * n - m, 2 * n - m), dtype=complex)
    out[:m, :m] = H[:m, :m]
    out[:m, n:] = H[:m, m:]
    out[n:, :m] = H[m:, :m]
    out[n:, n:] = H[m:, m:]
    out[m:n, n:] = -1j * np.eye(k)
    out[n:, m:n] = 1j * np.eye(k)
    return out


class SignatureClass(NamedTuple):
    """Equivalence class (m, p) of a base matrix, with a borderline warning.

    p counts eigenvalues above the rank cutoff, m - p below its negative;
    borderline is set when some eigenvalue sits within a factor of 10 of
    the cutoff, where the classification is numerically unstable.
    """

    m: int
    p: int
    borderline: bool


def signature_class(A: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> SignatureClass:
    """Class invariant of the local order isomorphism with base A."""
    H = as_hermitian(A, tol, "A")
    values = hermitian_eigen(H, tol).values
    if values.size == 0:
        return SignatureClass(0, 0, False)
    cut = tol.psd_tol * (1.0 + float(np.max(np.abs(values))))
    p = int(np.sum(values > cut))
    neg = int(np.sum(values < -cut))
    magnitudes = np.abs(values)
    borderline = bool(np.any((magnitudes > cut / 10.0) & (magnitudes < cut * 10.0)))
    return SignatureClass(p + neg, p, borderline)


def are_equivalent(A: Iterable, B: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Bases are equivalent iff their (m, p) signature classes coincide."""
    a = as_hermitian(A, tol, "A")
    b = as_hermitian(B, tol, "B")
    if a.shape != b.shape:
        raise MalformedInputError("dimension mismatch")
    return signature_class(a, tol)[:2] == signature_class(b, tol)[:2]


def class_count(n: int) -> int:
    """Number of equivalence classes of maximal local order isomorphisms."""
    if n < 0:
        raise MalformedInputError("n must be nonnegative")
    return (n + 2) * (n + 1) // 2


def enumerate_signatures(n: int) -> List[np.ndarray]:
    """One diagonal representative per possible signature in dimension n."""
    reps = []
    for m in range(n + 1):
        for p in range(m + 1):
            reps.append(np.diag([1.0] * p + [-1.0] * (m - p) + [0.0] * (n - m)).astype(complex))
    return reps


def growth_direction(spec: BlockMapSpec, X: Iterable, positive: bool = True, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """A semidefinite direction Y of extremal rank with X + cY staying in the domain for all c >= 0.

    For the positive side Y is PSD of rank n + p - m: it feeds the corner
    only through the span of the corner's positive eigenvectors (which
    keeps the corner inertia fixed for every c >= 0) and is free on the
    complement of the corner. The negative side mirrors this with the
    corner's negative eigenvectors, giving an NSD direction of rank n - p.
    These ranks are maximal: any semidefinite direction of higher rank
    eventually changes the corner inertia, which the verification suites
    refute by grid search.
    """
    H = as_hermitian(X, tol, "X")
    if H.shape[0] != spec.n:
        raise MalformedInputError("dimension mismatch")
    if not in_block_domain(spec, H, tol):
        raise DomainViolationError("X is outside the block domain")
    n, m = spec.n, spec.m
    D = np.zeros((n, n), dtype=complex)
    D[m:, m:] = np.eye(n - m)
    if m > 0:
        corner = hermitian_eigen(H[:m, :m], tol)
        cut = tol.psd_tol * (1.0 + float(np.max(np.abs(corner.values))))
        keep = corner.values > cut if positive else corner.values < -cut
        V = corner.vectors[:, keep]
        D[:m, :m] = V @ V.conj().T
    return herm_part(D if positive else -D)


def as_effect(X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate 0 <= X <= I (psd_tol cushion) and return the Hermitian part."""
    H = as_hermitian(X, tol, "X")
    eye = np.eye(H.shape[0])
    if not loewner_compare(np.zeros_like(H), H, tol).leq or not loewner_compare(H, eye, tol).leq:
        raise DomainViolationError("X is not an effect (needs 0 <= X <= I)")
    return H


@dataclasses.dataclass(frozen=True)
class EffectAutoSpec:
    """Automorphism of the effect interval: X -> T (X(T*T - I) + I)^{-1} X T*."""

    frame: np.ndarray
    transpose: bool = False

    def __post_init__(self) -> None:
        frame = as_square(self.frame, "frame")
        if not is_invertible(frame):
            raise MalformedInputError("frame must be invertible")
        object.__setattr__(self, "frame", frame)

    @property
    def dim(self) -> int:
        return self.frame.shape[0]


def effect_automorphism(spec: EffectAutoSpec, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Apply the frame form; fixes 0 and I and preserves order both ways."""
    H = as_effect(X, tol)
    if H.shape[0] != spec.dim:
        raise MalformedInputError("dimension mismatch")
    Y = H.T if spec.transpose else H
    T = spec.frame
    base = herm_part(T.conj().T @ T - np.eye(spec.dim))
    M = Y @ base + np.eye(spec.dim)
    if not is_invertible(M, tol):
        raise DomainViolationError("effect is outside the map's domain")
    return herm_part(T @ np.linalg.solve(M, Y) @ T.conj().T)


def _scaling_fn(p: float) -> Callable[[np.ndarray], np.ndarray]:
    """x -> x / (px + 1 - p), the order automorphism of [0, 1] with weight p."""

    def fn(x: np.ndarray) -> np.ndarray:
        return x / (p * x + 1.0 - p)

    return fn


@dataclasses.dataclass(frozen=True)
class FpqSpec:
    """Effect automorphism built from two scalar reweightings and a contraction.

    Parameters p in (0,1), q < 0, and a bijective T with ||T|| <= 1.
    """

    p: float
    q: float
    frame: np.ndarray
    transpose: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise MalformedInputError("p must lie in (0, 1)")
        if not self.q < 0.0:
            raise MalformedInputError("q must be negative")
        frame = as_square(self.frame, "frame")
        if opnorm(frame) > 1.0 + 1e-10:
            raise MalformedInputError("frame must be a contraction")
        if not is_invertible(frame):
            raise MalformedInputError("frame must be bijective")
        object.__setattr__(self, "frame", frame)

    @property
    def dim(self) -> int:
        return self.frame.shape[0]


def _resolvent_scaling(w: float, M: np.ndarray) -> np.ndarray:
    """Matrix version of x -> x/(wx + 1 - w) through a single linear solve."""
    n = M.shape[0]
    return np.linalg.solve(w * M + (1.0 - w) * np.eye(n), M)


def rational_effect_automorphism(spec: FpqSpec, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Direct evaluation: f_q(f_p(TT*)^{-1/2} f_p(T X' T*) f_p(TT*)^{-1/2}).

    Uses resolvent solves and a Schur-based matrix square root only, so the
    four-factor spectral decomposition below is an independent route to the
    same value.
    """
    H = as_effect(X, tol)
    if H.shape[0] != spec.dim:
        raise MalformedInputError("dimension mismatch")
    Y = H.T if spec.transpose else H
    T = spec.frame
    S = _resolvent_scaling(spec.p, herm_part(T @ T.conj().T))
    root = np.asarray(sqrtm(S), dtype=complex)
    if not is_invertible(root, tol):
        raise DomainViolationError("frame scaling is numerically singular")
    inner = herm_part(T @ Y @ T.conj().T)
    W = herm_part(np.linalg.solve(root, _resolvent_scaling(spec.p, inner)) @ np.linalg.inv(root))
    if not is_invertible(spec.q * W + (1.0 - spec.q) * np.eye(spec.dim), tol):
        raise DomainViolationError("argument is too close to the final reweighting pole")
    return herm_part(_resolvent_scaling(spec.q, W))


def rational_effect_factors(spec: FpqSpec, tol: ToleranceConfig = DEFAULT_TOL) -> Tuple[Callable, Callable, Callable, Callable]:
    """The map as a chain of four order isomorphisms (spectral route).

    factor 1: congruence by the contraction (with optional transpose);
    factor 2: spectral reweighting with p; factor 3: congruence by
    f_p(TT*)^{-1/2}; factor 4: spectral reweighting with q. Composing them
    must match rational_effect_automorphism.
    """
    T = spec.frame
    p_pole = -(1.0 - spec.p) / spec.p
    q_pole = -(1.0 - spec.q) / spec.q
    S = spectral_apply(herm_part(T @ T.conj().T), _scaling_fn(spec.p), poles=(p_pole,), tol=tol)
    inv_root = spectral_apply(S, lambda x: 1.0 / np.sqrt(x), domain=(0.0, np.inf), tol=tol)

    def factor1(X: np.ndarray) -> np.ndarray:
        Y = np.asarray(X)
        return herm_part(T @ (Y.T if spec.transpose else Y) @ T.conj().T)

    def factor2(X: np.ndarray) -> np.ndarray:
        return spectral_apply(X, _scaling_fn(spec.p), poles=(p_pole,), tol=tol)

    def factor3(X: np.ndarray) -> np.ndarray:
        return herm_part(inv_root @ np.asarray(X) @ inv_root)

    def factor4(X: np.ndarray) -> np.ndarray:
        return spectral_apply(X, _scaling_fn(spec.q), poles=(q_pole,), tol=tol)

    return factor1, factor2, factor3, factor4


@dataclasses.dataclass(frozen=True)
class EffectEmbeddingSpec:
    """Order embedding of the effect interval with overridable endpoints.

    Interior formula T (X base + I)^{-1} X T* + offset with base > -I; the
    values at 0 and I may be overridden provided value_at_zero <= offset
    and value_at_one >= the interior formula at I. Overrides are the only
    discontinuities the form admits.
    """

    frame: np.ndarray
    base: np.ndarray
    offset: np.ndarray
    value_at_zero: Optional[np.ndarray] = None
    value_at_one: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        frame = as_square(self.frame, "frame")
        base = as_hermitian(self.base, name="base")
        offset = as_hermitian(self.offset, name="offset")
        if frame.shape != base.shape or base.shape != offset.shape:
            raise MalformedInputError("frame / base / offset dimension mismatch")
        if not is_invertible(frame):
            raise MalformedInputError("frame must be invertible")
        n = base.shape[0]
        low = float(hermitian_eigen(base).values[0])
        if low <= -1.0 + DEFAULT_TOL.inv_margin:
            raise MalformedInputError("base must be > -I")
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "offset", offset)
        if self.value_at_zero is not None:
            v0 = as_hermitian(self.value_at_zero, name="value_at_zero")
            if not loewner_compare(v0, offset).leq:
                raise MalformedInputError("value_at_zero must be <= offset")
            object.__setattr__(self, "value_at_zero", v0)
        if self.value_at_one is not None:
            v1 = as_hermitian(self.value_at_one, name="value_at_one")
            top = self._interior(np.eye(n))
            if not loewner_compare(top, v1).leq:
                raise MalformedInputError("value_at_one must be >= the interior value at I")
            object.__setattr__(self, "value_at_one", v1)

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def _interior(self, X: np.ndarray) -> np.ndarray:
        M = X @ self.base + np.eye(self.dim)
        return herm_part(self.frame @ np.linalg.solve(M, X) @ self.frame.conj().T + self.offset)


def effect_embedding_map(spec: EffectEmbeddingSpec, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Evaluate the embedding, honoring endpoint overrides at 0 and I."""
    H = as_effect(X, tol)
    if H.shape[0] != spec.dim:
        raise MalformedInputError("dimension mismatch")
    eye = np.eye(spec.dim)
    if spec.value_at_zero is not None and float(np.linalg.norm(H)) <= tol.psd_tol:
        return spec.value_at_zero.copy()
    if spec.value_at_one is not None and float(np.linalg.norm(H - eye)) <= tol.psd_tol:
        return spec.value_at_one.copy()
    if not is_invertible(H @ spec.base + eye, tol):
        raise DomainViolationError("effect is outside the interior formula's domain")
    return spec._interior(H)


def endpoint_continuity(spec: EffectEmbeddingSpec, tol: ToleranceConfig = DEFAULT_TOL) -> Dict[str, bool]:
    """Whether the (possibly overridden) endpoint values match the interior limits."""
    eye = np.eye(spec.dim)
    report = {}
    for key, point, override in (("zero", np.zeros((spec.dim, spec.dim)), spec.value_at_zero),
                                 ("one", eye, spec.value_at_one)):
        limit = spec._interior(point)
        value = limit if override is None else override
        scale = 1.0 + opnorm(limit)
        report[key] = bool(opnorm(value - limit) <= 1e-8 * scale)
    return report
