"""Local order isomorphisms driven by a Hermitian base matrix.

The central object is the Mobius action of the unit lower-triangular block
shear [[I, 0], [base, I]]:

    shear_apply(base, X) = (X base + I)^{-1} X = X (base X + I)^{-1}

defined on the shear domain {X : X base + I invertible}. Restricted to the
connected component of 0 inside the Hermitian part of that domain it is an
order isomorphism onto the corresponding component for -base; composing with
congruences, transposition, and offsets yields the general local order
isomorphism form (LocalIsoSpec). This module provides the membership tests
(including the inertia-based zero-component criterion and a randomized
path-search oracle for cross-validation), the map itself, translation and
conjugation identities, congruence orbits, and black-box parameter
identification.
"""

from __future__ import annotations

import dataclasses
from typing import Callable, Iterable, List, NamedTuple, Optional, Sequence

import numpy as np
from scipy.linalg import sqrtm

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    DomainViolationError,
    MalformedInputError,
    ModelMismatchError,
    PathSearchError,
)
from .halfplane import normalize_phase
from .linalg import (
    as_hermitian,
    as_square,
    herm_part,
    hermitian_eigen,
    inertia,
    is_invertible,
    loewner_compare,
    opnorm,
    sqrt_psd,
)
from .sampling import random_hermitian

__all__ = [
    "LocalIsoSpec",
    "PathSearchResult",
    "in_shear_domain",
    "shear_apply",
    "in_zero_component",
    "segment_in_shear_domain",
    "segment_in_zero_component",
    "interval_below_criterion",
    "order_iso_apply",
    "translated_base",
    "conjugated_base",
    "congruence_orbit",
    "apply_local_iso",
    "identify_parameters",
    "path_to_zero",
]

# Residual gates used by identify_parameters (derivative congruence form and
# agreement of the base recovered at two distinct samples).
DERIVATIVE_RESIDUAL_TOL = 1e-6
BASE_CONSISTENCY_TOL = 1e-6


def in_shear_domain(base: Iterable, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff X base + I is invertible (relative inv_margin on sigma_min)."""
    A = as_hermitian(base, tol, "base")
    M = as_square(X, "X")
    if A.shape != M.shape:
        raise MalformedInputError("dimension mismatch")
    return is_invertible(M @ A + np.eye(A.shape[0]), tol)


def shear_apply(base: Iterable, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """(X base + I)^{-1} X on the shear domain; Hermitian in, Hermitian out."""
    A = as_hermitian(base, tol, "base")
    M = as_square(X, "X")
    if A.shape != M.shape:
        raise MalformedInputError("dimension mismatch")
    if not in_shear_domain(A, M, tol):
        raise DomainViolationError("X is outside the shear domain of this base")
    return np.linalg.solve(M @ A + np.eye(A.shape[0]), M)


def _range_compression(base: np.ndarray, tol: ToleranceConfig):
    """Eigenvectors and eigenvalues of the base above the rank cutoff."""
    decomp = hermitian_eigen(base, tol)
    if decomp.values.size == 0:
        return decomp.vectors[:, :0], decomp.values[:0]
    cut = tol.psd_tol * (1.0 + float(np.max(np.abs(decomp.values))))
    mask = np.abs(decomp.values) > cut
    return decomp.vectors[:, mask], decomp.values[mask]


def in_zero_component(base: Iterable, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Membership of Hermitian X in the connected component of 0.

    The component is cut out of the Hermitian slice of the shear domain by an
    inertia invariant: compress X to the range of the base against the
    invertible compression A_K, then X belongs to the component of 0 iff

        inertia(|A_K|^{1/2} X_K |A_K|^{1/2} + S) == inertia(S),

    where S is the diagonal sign matrix of A_K. The left side is an affine
    bijection of Hermitian matrices in the compressed coordinates, components
    of invertible Hermitian matrices are exactly the inertia classes, and
    X base + I is invertible iff the compressed matrix is, which makes the
    criterion exact. It is nevertheless cross-validated against the
    randomized path oracle in the verification suites.
    """
    A = as_hermitian(base, tol, "base")
    H = as_hermitian(X, tol, "X")
    if A.shape != H.shape:
        raise MalformedInputError("dimension mismatch")
    V, lam = _range_compression(A, tol)
    k = lam.size
    if k == 0:
        return True
    p = int(np.sum(lam > 0))
    signs = np.sign(lam)
    w = np.sqrt(np.abs(lam))
    Xk = V.conj().T @ H @ V
    M = herm_part((w[:, None] * Xk) * w[None, :] + np.diag(signs))
    return tuple(inertia(M, tol)) == (p, 0, k - p)


def _segment_crossings(base: np.ndarray, P: np.ndarray, Qs: np.ndarray, eig_margin: float = 1e-7) -> np.ndarray:
    """Vectorized exact test: does the segment P -> Q leave the shear domain?

    Parameterizing (P + tD) base + I = (P base + I)(I + t G) with
    G = (P base + I)^{-1} D base shows the segment hits a singular point at
    t = -1/mu for each real eigenvalue mu <= -1 of G. Returns a boolean array
    (True = crossing) for the stacked segment targets Qs (shape (k, n, n));
    P itself must already be inside the domain.
    """
    n = base.shape[0]
    M = P @ base + np.eye(n)
    D = Qs - P[None, :, :]
    G = np.linalg.solve(M[None, :, :], D @ base)
    eigs = np.linalg.eigvals(G)
    real_like = np.abs(eigs.imag) <= eig_margin * (1.0 + np.abs(eigs.real))
    bad = real_like & (eigs.real <= -1.0 + eig_margin)
    return np.any(bad, axis=1)


def segment_in_shear_domain(base: Iterable, X: Iterable, Y: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Exact membership of the whole segment [X, Y] in the shear domain."""
    A = as_hermitian(base, tol, "base")
    P = as_square(X, "X")
    Q = as_square(Y, "Y")
    if not in_shear_domain(A, P, tol):
        return False
    return not bool(_segment_crossings(A, P, Q[None, :, :])[0])


def segment_in_zero_component(
    base: Iterable, X: Iterable, Y: Iterable, steps: int = 32, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Grid test of the segment condition used to gate monotonicity checks.

    Both endpoints must lie in the zero component; the segment passes iff
    every convex combination on a `steps`-point grid (plus the endpoints)
    stays inside the shear domain.
    """
    A = as_hermitian(base, tol, "base")
    P = as_hermitian(X, tol, "X")
    Q = as_hermitian(Y, tol, "Y")
    if not (in_zero_component(A, P, tol) and in_zero_component(A, Q, tol)):
        raise DomainViolationError("segment endpoints must lie in the zero component")
    for c in np.linspace(0.0, 1.0, steps + 2):
        if not in_shear_domain(A, (1.0 - c) * P + c * Q, tol):
            return False
    return True


def interval_below_criterion(base: Iterable, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Criterion for the whole interval [0, X] (X PSD) to lie in the zero component.

    Holds iff the smallest eigenvalue of X^{1/2} base X^{1/2} stays above
    -1 + inv_margin.
    """
    A = as_hermitian(base, tol, "base")
    H = as_hermitian(X, tol, "X")
    if not loewner_compare(np.zeros_like(H), H, tol).leq:
        raise DomainViolationError("X must be PSD")
    if not in_zero_component(A, H, tol):
        raise DomainViolationError("X must lie in the zero component")
    R = sqrt_psd(H, tol)
    lowest = float(hermitian_eigen(herm_part(R @ A @ R), tol).values[0])
    return lowest > -1.0 + tol.inv_margin


def order_iso_apply(base: Iterable, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The canonical local order isomorphism on the zero component.

    Same formula as shear_apply but gated on component membership and
    symmetrized; the image lies in the zero component of -base.
    """
    A = as_hermitian(base, tol, "base")
    H = as_hermitian(X, tol, "X")
    if not in_zero_component(A, H, tol):
        raise DomainViolationError("X is outside the zero component of this base")
    return herm_part(np.linalg.solve(H @ A + np.eye(A.shape[0]), H))


def translated_base(base: Iterable, X0: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Base parameter seen from a shifted origin: base (X0 base + I)^{-1}.

    Shifting the map's argument by a Hermitian X0 inside the shear domain is
    equivalent, up to fixed congruence and offset, to the map with this
    translated base.
    """
    A = as_hermitian(base, tol, "base")
    H = as_hermitian(X0, tol, "X0")
    if not in_shear_domain(A, H, tol):
        raise DomainViolationError("X0 is outside the shear domain of this base")
    M = H @ A + np.eye(A.shape[0])
    return herm_part(np.linalg.solve(M.T, A.T).T)


def conjugated_base(base: Iterable, frame: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Base parameter for the congruence-conjugated map: frame base frame*."""
    A = as_hermitian(base, tol, "base")
    T = as_square(frame, "frame")
    if not is_invertible(T, tol):
        raise DomainViolationError("frame must be invertible")
    return herm_part(T @ A @ T.conj().T)


def congruence_orbit(base: Iterable, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL, max_depth: int = 20) -> np.ndarray:
    """Invertible T with shear_apply(X, base) = T base T*.

    Built along the straight path t -> tX by accumulating principal square
    roots of the consecutive factors (base tX_j + I)^{-1}(base tX_{j-1} + I);
    segments are bisected adaptively whenever a factor strays further than
    1/2 from the identity, failing after `max_depth` levels. Requires the
    straight segment to stay inside the shear domain.
    """
    A = as_hermitian(base, tol, "base")
    H = as_hermitian(X, tol, "X")
    if not in_zero_component(A, H, tol):
        raise DomainViolationError("X must lie in the zero component")
    n = A.shape[0]
    eye = np.eye(n)
    if float(np.linalg.norm(A)) <= tol.psd_tol or float(np.linalg.norm(H)) == 0.0:
        return eye.astype(complex)
    AX = A @ H

    def node(t: float) -> np.ndarray:
        M = eye + t * AX
        if not is_invertible(M, tol):
            raise PathSearchError(f"straight path leaves the shear domain at t={t:.6g}")
        return M

    def span(t0: float, t1: float, depth: int) -> np.ndarray:
        G = np.linalg.solve(node(t1), node(t0))
        if opnorm(G - eye) <= 0.5:
            return np.asarray(sqrtm(G), dtype=complex)
        if depth >= max_depth:
            raise PathSearchError(f"no admissible subdivision within {max_depth} bisection levels")
        mid = (t0 + t1) / 2.0
        return span(mid, t1, depth + 1) @ span(t0, mid, depth + 1)

    return span(0.0, 1.0, 0)


@dataclasses.dataclass(frozen=True)
class LocalIsoSpec:
    """Parameters of a general local order isomorphism.

    apply(X) = output_offset + frame Phi((X - input_offset)') frame*, where
    Phi is the canonical map for `base` and ' is an optional transpose.
    """

    base: np.ndarray
    frame: np.ndarray
    transpose: bool = False
    input_offset: Optional[np.ndarray] = None
    output_offset: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        base = as_hermitian(self.base, name="base")
        frame = as_square(self.frame, "frame")
        if frame.shape != base.shape:
            raise MalformedInputError("frame / base dimension mismatch")
        if not is_invertible(frame):
            raise MalformedInputError("frame must be invertible")
        n = base.shape[0]
        input_offset = np.zeros((n, n)) if self.input_offset is None else as_hermitian(self.input_offset, name="input_offset")
        output_offset = np.zeros((n, n)) if self.output_offset is None else as_hermitian(self.output_offset, name="output_offset")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "input_offset", input_offset)
        object.__setattr__(self, "output_offset", output_offset)

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def apply(self, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
        return apply_local_iso(self, X, tol)


def apply_local_iso(spec: LocalIsoSpec, X: Iterable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    H = as_hermitian(X, tol, "X")
    if H.shape != spec.base.shape:
        raise MalformedInputError("dimension mismatch")
    Y = H - spec.input_offset
    if spec.transpose:
        Y = Y.T
    inner = order_iso_apply(spec.base, Y, tol)
    return herm_part(spec.output_offset + spec.frame @ inner @ spec.frame.conj().T)


def _five_point_derivative(evaluator, E: np.ndarray, h: float) -> np.ndarray:
    """O(h^4) central difference of t -> evaluator(tE) at t = 0."""
    direct = evaluator(h * E) - evaluator(-h * E)
    wide = evaluator(2.0 * h * E) - evaluator(-2.0 * h * E)
    return herm_part((8.0 * direct - wide) / (12.0 * h))


def identify_parameters(
    evaluator: Callable[[np.ndarray], np.ndarray],
    dim: int,
    step: Optional[float] = None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> LocalIsoSpec:
    """Recover (base, frame, transpose flag) from a black-box map fixing 0.

    The derivative at 0 of the model map is Y -> frame Y' frame*; finite
    differences over the probe directions e1e1*, e1ej* + eje1*, and
    i(e1ej* - eje1*) determine the frame columns, the phased probes flip
    sign under transposition and decide the flag, and the base is then read
    off algebraically at a small invertible sample. Two independent samples
    must agree on the base, otherwise the evaluator is not of the model form.
    """
    if dim < 1:
        raise MalformedInputError("dim must be positive")
    eye = np.eye(dim, dtype=complex)
    probe_gain = float(np.linalg.norm(evaluator(1e-6 * eye))) / 1e-6
    h = step if step is not None else 1e-4 * (1.0 + probe_gain)

    at_zero = float(np.linalg.norm(evaluator(np.zeros((dim, dim)))))
    if at_zero > 1e-8 * (1.0 + probe_gain):
        raise ModelMismatchError(f"evaluator(0) = {at_zero:.3e}, expected 0")

    E11 = np.zeros((dim, dim), dtype=complex)
    E11[0, 0] = 1.0
    D11 = _five_point_derivative(evaluator, E11, h)
    decomp = hermitian_eigen(D11, tol)
    t1 = decomp.vectors[:, -1] * np.sqrt(max(float(decomp.values[-1]), 0.0))
    t1_sq = float(np.vdot(t1, t1).real)
    if t1_sq <= tol.inv_margin:
        raise ModelMismatchError("derivative probe at e1 is degenerate")

    probes = []  # (H_j direction derivative, K_j direction derivative)
    cols_linear = [t1]
    cols_transpose = [t1]
    for j in range(1, dim):
        H = np.zeros((dim, dim), dtype=complex)
        H[0, j] = 1.0
        H[j, 0] = 1.0
        K = np.zeros((dim, dim), dtype=complex)
        K[0, j] = 1j
        K[j, 0] = -1j
        DH = _five_point_derivative(evaluator, H, h)
        DK = _five_point_derivative(evaluator, K, h)
        probes.append((H, K, DH, DK))
        C = (DH - 1j * DK) / 2.0
        cols_linear.append(C.conj().T @ t1 / t1_sq)
        cols_transpose.append(C @ t1 / t1_sq)

    scale = 1.0 + max([opnorm(D11)] + [max(opnorm(DH), opnorm(DK)) for _, _, DH, DK in probes], default=1.0)

    def congruence_residual(T: np.ndarray, transpose: bool) -> float:
        worst = opnorm(D11 - T @ E11 @ T.conj().T)
        for H, K, DH, DK in probes:
            HH, KK = (H.T, K.T) if transpose else (H, K)
            worst = max(worst, opnorm(DH - T @ HH @ T.conj().T))
            worst = max(worst, opnorm(DK - T @ KK @ T.conj().T))
        return worst

    T_lin = np.column_stack(cols_linear)
    T_trp = np.column_stack(cols_transpose)
    res_lin = congruence_residual(T_lin, False)
    res_trp = congruence_residual(T_trp, True) if dim > 1 else np.inf
    transpose = res_trp < res_lin
    T = T_trp if transpose else T_lin
    if min(res_lin, res_trp) > DERIVATIVE_RESIDUAL_TOL * scale:
        raise ModelMismatchError("derivative at 0 is not of congruence form")
    if not is_invertible(T, tol):
        raise ModelMismatchError("recovered frame is singular")

    Tinv = np.linalg.inv(T)

    def recover_base(sample: np.ndarray) -> np.ndarray:
        S = sample.T if transpose else sample
        inner = Tinv @ evaluator(sample) @ Tinv.conj().T
        return herm_part(np.linalg.inv(inner) - np.linalg.inv(S))

    c = 5.0 * h
    direction = random_hermitian(np.random.default_rng(3), dim)
    direction = direction / max(opnorm(direction), 1e-12)
    A1 = recover_base(c * np.eye(dim))
    A2 = recover_base(c * (np.eye(dim) + 0.6 * direction))
    if opnorm(A1 - A2) > BASE_CONSISTENCY_TOL * (1.0 + opnorm(A1)):
        raise ModelMismatchError("base parameter is inconsistent across samples; evaluator is not of the model form")

    return LocalIsoSpec(base=A1, frame=normalize_phase(T), transpose=transpose)


class PathSearchResult(NamedTuple):
    found: bool
    path: Optional[List[np.ndarray]]
    nodes_used: int


def _bfs_over_pool(base: np.ndarray, nodes: List[np.ndarray], tol: ToleranceConfig) -> Optional[List[int]]:
    """Breadth-first search from nodes[0] to nodes[1] over exact-segment edges."""
    total = len(nodes)
    stacked = np.stack(nodes)
    visited = {0}
    parents = {0: -1}
    frontier = [0]
    while frontier:
        next_frontier: List[int] = []
        for v in frontier:
            others = [i for i in range(total) if i not in visited]
            if not others:
                break
            crossings = _segment_crossings(base, nodes[v], stacked[others])
            for idx, crossed in zip(others, crossings):
                # crossed: segment leaves the domain somewhere strictly inside
                if crossed or idx in visited:
                    continue
                visited.add(idx)
                parents[idx] = v
                if idx == 1:
                    path = [1]
                    while path[-1] != -1 and parents[path[-1]] != -1:
                        path.append(parents[path[-1]])
                    path.append(0)
                    return list(dict.fromkeys(reversed(path)))
                next_frontier.append(idx)
        frontier = next_frontier
    return None


def path_to_zero(
    base: Iterable,
    X: Iterable,
    tol: ToleranceConfig = DEFAULT_TOL,
    seed: int = 0,
    pool_size: int = 48,
    max_nodes: int = 10_000,
) -> PathSearchResult:
    """Randomized piecewise-linear path search from 0 to X inside the domain.

    Independent oracle for in_zero_component: uses only exact segment tests.
    Tries the straight segment, then breadth-first search over growing pools
    of random Hermitian waypoints until a path is found or the node budget is
    exhausted. A found path certifies membership; exhaustion is (only)
    evidence of non-membership.
    """
    A = as_hermitian(base, tol, "base")
    H = as_hermitian(X, tol, "X")
    if not in_shear_domain(A, H, tol):
        return PathSearchResult(False, None, 0)
    zero = np.zeros_like(H)
    if segment_in_shear_domain(A, zero, H, tol):
        return PathSearchResult(True, [zero, H], 2)
    rng = np.random.default_rng(seed)
    spread = max(1.0, opnorm(H))
    used = 2
    pool = pool_size
    while used < max_nodes:
        pool = min(pool, max_nodes - used)
        candidates = []
        for _ in range(pool):
            kind = rng.integers(0, 3)
            if kind == 0:
                W = random_hermitian(rng, H.shape[0], scale=spread * rng.choice([0.5, 1.0, 2.0]))
            elif kind == 1:
                W = rng.uniform(0.1, 0.9) * H + random_hermitian(rng, H.shape[0], scale=0.7 * spread)
            else:
                W = rng.uniform(-0.5, 1.5) * H * rng.uniform(0.2, 0.8)
            if in_shear_domain(A, W, tol):
                candidates.append(W)
        used += pool
        if candidates:
            nodes = [zero, H] + candidates
            order = _bfs_over_pool(A, nodes, tol)
            if order is not None:
                return PathSearchResult(True, [nodes[i] for i in order], used)
        pool *= 2
    return PathSearchResult(False, None, used)
