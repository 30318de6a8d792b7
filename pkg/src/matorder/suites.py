"""Named randomized verification suites with deterministic reports.

Every library-level invariant is exercised by exactly one named suite.
run_suite(name, seed, trials) replays a suite deterministically; two runs
with the same arguments produce byte-identical reports up to the timing
field. Failures carry serialized matrix witnesses.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from typing import Callable, Dict, List, Optional

import numpy as np

from .classify import (
    BlockMapSpec,
    EffectAutoSpec,
    EffectEmbeddingSpec,
    FpqSpec,
    block_map_apply,
    bordered_arrangement,
    bordered_embedding,
    class_count,
    are_equivalent,
    effect_automorphism,
    effect_embedding_map,
    endpoint_continuity,
    enumerate_signatures,
    growth_direction,
    in_block_domain,
    rational_effect_automorphism,
    rational_effect_factors,
    signature_class,
)
from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DomainViolationError, MalformedInputError, ModelMismatchError, PathSearchError
from .fileio import matrix_to_payload, matrix_to_text, parse_matrix_text
from .halfplane import (
    MobiusAutomorphism,
    apply_mobius,
    cayley,
    fit_canonical,
    in_half_plane,
    inverse_cayley,
    mobius_fix01,
    mobius_fix01_matrix,
    neg_inverse,
    normalize_phase,
)
from .linalg import (
    frob,
    herm_part,
    hermitian_eigen,
    inertia,
    invertibility_margin,
    is_invertible,
    loewner_compare,
    opnorm,
    spectral_apply,
    spectral_pinv,
    sqrt_psd,
)
from .localiso import (
    LocalIsoSpec,
    apply_local_iso,
    congruence_orbit,
    conjugated_base,
    identify_parameters,
    in_shear_domain,
    in_zero_component,
    interval_below_criterion,
    order_iso_apply,
    path_to_zero,
    segment_in_shear_domain,
    shear_apply,
    translated_base,
)
from .monotone import (
    PickRepresentation,
    ScalarFunction,
    builtin_function,
    is_matrix_monotone,
    loewner_matrix,
    pick_eval,
)
from .order import (
    OperatorInterval,
    affine_interval_iso,
    interval_contains,
    projection_dominance_radius,
    rank_one_leq,
)
from .sampling import (
    random_contraction,
    random_effect,
    random_half_plane,
    random_hermitian,
    random_hermitian_with_spectrum,
    random_invertible,
    random_psd,
    random_unitary,
)

__all__ = ["RunReport", "run_suite", "run_all", "suite_names", "suite_description"]

MAX_STORED_FAILURES = 16


@dataclasses.dataclass
class RunReport:
    """Outcome of one suite run; serializes deterministically."""

    suite: str
    seed: int
    trials: int
    failures: List[dict]
    max_residual: float
    details: Dict[str, object]
    elapsed_seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures and int(self.details.get("failure_count", 0)) == 0

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failure_count": int(self.details.get("failure_count", len(self.failures))),
            "failures": self.failures,
            "max_residual": float(self.max_residual),
            "details": self.details,
        }
        if include_timing:
            out["elapsed_seconds"] = float(self.elapsed_seconds)
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, separators=(",", ":"))


class _Recorder:
    def __init__(self) -> None:
        self.failures: List[dict] = []
        self.failure_count = 0
        self.max_residual = 0.0

    def residual(self, value: float) -> float:
        v = float(value)
        if math.isfinite(v):
            self.max_residual = max(self.max_residual, v)
        else:
            self.max_residual = math.inf
        return v

    def fail(self, trial: int, description: str, **witnesses) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append({
                "trial": int(trial),
                "description": description,
                "witnesses": {k: matrix_to_payload(np.atleast_2d(v)) for k, v in witnesses.items()},
            })

    def check(self, ok: bool, trial: int, description: str, **witnesses) -> bool:
        if not ok:
            self.fail(trial, description, **witnesses)
        return bool(ok)

    def check_residual(self, value: float, bound: float, trial: int, description: str, **witnesses) -> bool:
        v = self.residual(value)
        return self.check(v <= bound, trial, f"{description}: residual {v:.3e} > {bound:.3e}", **witnesses)


# ---------------------------------------------------------------------------
# shared samplers


def _rand_dim(rng: np.random.Generator, lo: int = 2, hi: int = 6) -> int:
    return int(rng.integers(lo, hi + 1))


def _mixed_rank_hermitian(rng: np.random.Generator, n: int, zero_prob: float = 0.3,
                          lo: float = 0.3, hi: float = 2.5) -> np.ndarray:
    """Hermitian with well-separated eigenvalues, some forced to exactly zero."""
    vals = np.where(
        rng.random(n) < zero_prob,
        0.0,
        rng.uniform(lo, hi, size=n) * rng.choice([-1.0, 1.0], size=n),
    )
    V = random_unitary(rng, n)
    return herm_part(V @ np.diag(vals).astype(complex) @ V.conj().T)


def _well_margined(M: np.ndarray, rel: float = 1e-3) -> bool:
    return invertibility_margin(M) > rel * (1.0 + opnorm(M))


def _sample_shear_member(rng: np.random.Generator, A: np.ndarray, tol: ToleranceConfig,
                         attempts: int = 200, margin: float = 1e-3) -> Optional[np.ndarray]:
    n = A.shape[0]
    eye = np.eye(n)
    for _ in range(attempts):
        X = random_hermitian(rng, n, scale=rng.uniform(0.3, 1.6))
        if _well_margined(X @ A + eye, margin):
            return X
    return None


def _sample_component_member(rng: np.random.Generator, A: np.ndarray, tol: ToleranceConfig,
                             attempts: int = 300, margin: float = 1e-3) -> Optional[np.ndarray]:
    n = A.shape[0]
    eye = np.eye(n)
    for k in range(attempts):
        scale = rng.uniform(0.1, 1.2) if k % 2 else rng.uniform(0.05, 0.5)
        X = random_hermitian(rng, n, scale=scale)
        if _well_margined(X @ A + eye, margin) and in_zero_component(A, X, tol):
            return X
    return None


def _psd_step(rng: np.random.Generator, X: np.ndarray, strict: bool = False) -> np.ndarray:
    n = X.shape[0]
    s = rng.uniform(0.02, 0.4) * (1.0 + opnorm(X))
    D = random_psd(rng, n)
    D = D * (s / max(opnorm(D), 1e-12))
    if strict:
        D = D + 0.05 * (1.0 + opnorm(X)) * np.eye(n)
    return herm_part(D)


def _indefinite_step(rng: np.random.Generator, X: np.ndarray) -> np.ndarray:
    """Direction with clearly positive and clearly negative eigenvalues."""
    n = X.shape[0]
    s = 1.0 + opnorm(X)
    k = max(1, n // 2)
    vals = np.concatenate([
        rng.uniform(0.05, 0.5, size=k) * s,
        -rng.uniform(0.05, 0.5, size=n - k) * s,
    ])
    V = random_unitary(rng, n)
    return herm_part(V @ np.diag(vals).astype(complex) @ V.conj().T)


def _block_sample(rng: np.random.Generator, spec: BlockMapSpec) -> np.ndarray:
    """Random point of the (m, p) block domain with a well-margined corner."""
    n, m, p = spec.n, spec.m, spec.p
    X = random_hermitian(rng, n, scale=0.8)
    if m > 0:
        vals = np.concatenate([rng.uniform(0.3, 2.0, size=p), -rng.uniform(0.3, 2.0, size=m - p)])
        V = random_unitary(rng, m)
        X[:m, :m] = herm_part(V @ np.diag(vals).astype(complex) @ V.conj().T)
    return herm_part(X)


def _effect_pair(rng: np.random.Generator, n: int, strict: bool = False):
    X = random_effect(rng, n)
    G = sqrt_psd(np.eye(n) - X)
    if strict:
        R = herm_part(random_hermitian_with_spectrum(rng, n, 0.2, 0.9))
    else:
        R = random_effect(rng, n)
    c = rng.uniform(0.2, 0.9)
    Y = herm_part(X + c * G @ R @ G)
    return X, Y


def _all_classes(n: int):
    return [(m, p) for m in range(n + 1) for p in range(m + 1)]


# ---------------------------------------------------------------------------
# core linear algebra suites


def _suite_eigen_residual(rng, trials, tol, rec):
    sizes = [2, 3, 4, 5, 6, 8, 12, 16]
    for t in range(trials):
        n = sizes[t % len(sizes)]
        X = random_hermitian(rng, n, scale=10.0 ** rng.uniform(-1.0, 1.0))
        # jacobi on every small matrix, but only every 4th large one (it is O(n^4))
        engines = ["numpy", "jacobi"] if n <= 8 or t % 4 == 0 else ["numpy"]
        for engine in engines:
            decomp = hermitian_eigen(X, tol, engine=engine)
            V, vals = decomp.vectors, decomp.values
            res = frob(X @ V - V * vals) / (1.0 + frob(X))
            rec.check_residual(res, tol.eig_tol, t, f"{engine} eigen residual", X=X)
            unit = frob(V.conj().T @ V - np.eye(n))
            rec.check_residual(unit, tol.eig_tol * n, t, f"{engine} eigenvector unitarity", X=X)
            rec.check(bool(np.all(np.diff(vals) >= 0)), t, f"{engine} eigenvalues not ascending", X=X)
        if t == 0:
            D = np.diag([3.0, -1.0, 0.0, 7.5]).astype(complex)
            got = hermitian_eigen(D, tol).values
            rec.check_residual(float(np.max(np.abs(got - np.sort(np.diag(D).real)))), tol.eig_tol,
                               t, "diagonal eigenvalues", X=D)
    return {}


def _suite_inertia_congruence(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng)
        n_pos = int(rng.integers(0, n + 1))
        n_zero = int(rng.integers(0, n - n_pos + 1))
        n_neg = n - n_pos - n_zero
        vals = np.concatenate([
            rng.uniform(0.5, 3.0, size=n_pos),
            np.zeros(n_zero),
            -rng.uniform(0.5, 3.0, size=n_neg),
        ])
        S = random_invertible(rng, n, max_cond=30.0)
        X = herm_part(S @ np.diag(vals).astype(complex) @ S.conj().T)
        got = tuple(inertia(X, tol))
        rec.check(got == (n_pos, n_zero, n_neg), t,
                  f"congruence changed inertia {(n_pos, n_zero, n_neg)} -> {got}", X=X, S=S)
        for c in (1e-3, 1.0, 1e3):
            rec.check(tuple(inertia(c * X, tol)) == got, t, f"inertia not scale invariant at c={c}", X=X)
    return {}


def _suite_order_antisymmetry(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng)
        X = random_hermitian(rng, n, scale=rng.uniform(0.5, 2.0))
        P = _psd_step(rng, X, strict=(t % 2 == 0))
        v = loewner_compare(X, X + P, tol)
        rec.check(v.leq, t, "X <= X + PSD failed", X=X, P=P)
        min_p = float(hermitian_eigen(P, tol).values[0])
        scale = 1.0 + opnorm(X) + opnorm(X + P)
        if min_p > 1e-4 * scale:
            rec.check(v.lt, t, "strict step not detected as strict", X=X, P=P)
            rec.check(not loewner_compare(X + P, X, tol).leq, t, "antisymmetry violated", X=X, P=P)
        rec.check(loewner_compare(X, X, tol).equal, t, "X == X failed", X=X)
        Y = random_hermitian(rng, n)
        rec.check(loewner_compare(X, Y, tol).leq == loewner_compare(-Y, -X, tol).leq, t,
                  "negation flip mismatch", X=X, Y=Y)
        D = _indefinite_step(rng, X)
        rec.check(loewner_compare(X, X + D, tol).incomparable, t,
                  "indefinite step not incomparable", X=X, D=D)
    return {}


def _suite_spectral_composition(rng, trials, tol, rec):
    bound = 1e-9
    for t in range(trials):
        n = _rand_dim(rng)
        X = random_hermitian(rng, n, scale=rng.uniform(0.5, 2.0))
        inner = spectral_apply(X, lambda x: x * x, tol=tol)
        two_step = spectral_apply(inner, lambda x: math.sqrt(x + 1.0), domain=(-0.5, math.inf), tol=tol)
        one_step = spectral_apply(X, lambda x: math.sqrt(x * x + 1.0), tol=tol)
        rec.check_residual(opnorm(two_step - one_step) / (1.0 + opnorm(one_step)), bound,
                           t, "sqrt(x^2+1) composition", X=X)
        P = herm_part(random_psd(rng, n) + 0.3 * np.eye(n))
        back = spectral_apply(spectral_apply(P, math.log, domain=(0.0, math.inf), tol=tol), math.exp, tol=tol)
        rec.check_residual(opnorm(back - P) / (1.0 + opnorm(P)), bound, t, "exp(log(P)) identity", P=P)
        if n <= 6:
            alt = spectral_apply(X, lambda x: math.sqrt(x * x + 1.0), tol=tol, engine="jacobi")
            rec.check_residual(opnorm(alt - one_step) / (1.0 + opnorm(one_step)), bound,
                               t, "engine cross-check", X=X)
    return {}


def _suite_rank_one_trace(rng, trials, tol, rec):
    skipped = 0
    for t in range(trials):
        n = _rand_dim(rng)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nv2 = float(np.vdot(v, v).real)
        c = rng.uniform(0.1, 1.4) / nv2
        R = herm_part(c * np.outer(v, v.conj()))
        kind = t % 3
        if kind == 0:
            A = herm_part(np.outer(v, v.conj()) / nv2)
            if abs(c * nv2 - 1.0) < 1e-3:
                skipped += 1
                continue
            rec.check(rank_one_leq(R, A, tol) == (c * nv2 <= 1.0), t,
                      "projection trace rule mismatch", R=R, A=A)
            continue
        if kind == 1:
            A = herm_part(random_psd(rng, n) + 0.1 * np.eye(n))
        else:
            vals = np.concatenate([rng.uniform(0.2, 2.0, size=n - 1), [0.0]])
            V = random_unitary(rng, n)
            A = herm_part(V @ np.diag(vals).astype(complex) @ V.conj().T)
            if t % 2 == 0:
                w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                u = A @ w
                nu = float(np.linalg.norm(u))
                if nu > 1e-8:
                    u = u / nu
                    cc = rng.uniform(0.1, 1.4)
                    R = herm_part(cc * np.outer(u, u.conj()))
        gap = float(hermitian_eigen(herm_part(A - R), tol).values[0])
        scale = 1.0 + opnorm(A) + opnorm(R)
        if abs(gap) <= 1e-6 * scale:
            skipped += 1
            continue
        rec.check(rank_one_leq(R, A, tol) == (gap >= 0.0), t,
                  f"rank-one domination mismatch (gap {gap:.3e})", R=R, A=A)
    return {"skipped_borderline": skipped}


def _suite_interval_iso(rng, trials, tol, rec):
    for t in range(trials):
        n = int(rng.integers(2, 6))
        L = random_hermitian(rng, n)
        if t % 2 == 0:
            D = herm_part(random_psd(rng, n) + 0.2 * np.eye(n))
        else:
            # rank-deficient gap with well-separated positive part
            r = int(rng.integers(1, n))
            vals = np.concatenate([rng.uniform(0.3, 2.0, size=r), np.zeros(n - r)])
            V = random_unitary(rng, n)
            D = herm_part(V @ np.diag(vals).astype(complex) @ V.conj().T)
        U = herm_part(L + D)
        iso = affine_interval_iso(L, U, tol)
        eye_r = np.eye(iso.rank)
        rec.check_residual(opnorm(iso.forward(L, tol)), 1e-10, t, "forward(lower) != 0", L=L, U=U)
        rec.check_residual(opnorm(iso.forward(U, tol) - eye_r), 1e-10, t, "forward(upper) != I", L=L, U=U)
        Dh = sqrt_psd(D, tol)
        E1 = random_effect(rng, n)
        X1 = herm_part(L + Dh @ E1 @ Dh)
        F1 = iso.forward(X1, tol)
        vals = hermitian_eigen(F1, tol).values
        rec.check(float(vals[0]) >= -1e-8 and float(vals[-1]) <= 1.0 + 1e-8, t,
                  "forward image leaves the effect interval", X=X1)
        rec.check_residual(opnorm(iso.backward(F1, tol) - X1) / (1.0 + opnorm(X1)), 1e-9,
                           t, "backward(forward) identity", X=X1)
        G2 = sqrt_psd(np.eye(n) - E1, tol)
        E2 = herm_part(E1 + rng.uniform(0.2, 0.8) * G2 @ random_effect(rng, n) @ G2)
        X2 = herm_part(L + Dh @ E2 @ Dh)
        gap = float(hermitian_eigen(herm_part(iso.forward(X2, tol) - F1), tol).values[0])
        rec.check(gap >= -1e-8 * (1.0 + opnorm(F1)), t, "forward not order preserving", X1=X1, X2=X2)
        J = OperatorInterval(L, U)
        rec.check(interval_contains(J, X1, tol), t, "sampled point not contained", X=X1)
        rec.check(not interval_contains(J, herm_part(U + 0.1 * (1.0 + opnorm(U)) * np.eye(n)), tol),
                  t, "point beyond upper reported contained", U=U)
    return {}


def _suite_projection_dominance(rng, trials, tol, rec):
    skipped = 0
    for t in range(trials):
        c = rng.uniform(0.0, 0.9)
        d = rng.uniform(c + 0.02, 1.0)
        radius = projection_dominance_radius(c, d)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v = v / np.linalg.norm(v)
        w = np.array([-np.conj(v[1]), np.conj(v[0])])
        P = np.outer(v, v.conj())
        Q = np.outer(w, w.conj())
        alpha = rng.uniform(0.0, math.pi / 2.0)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        u = math.cos(alpha) * v + math.sin(alpha) * phase * w
        E = np.outer(u, u.conj())
        dist = abs(math.sin(alpha))
        if abs(dist - radius) < 1e-4:
            skipped += 1
            continue
        dominated = loewner_compare(d * E, P + c * Q, tol).leq
        rec.check(dominated == (dist <= radius), t,
                  f"dominance mismatch at distance {dist:.6f}, radius {radius:.6f}", E=E, P=P)
    return {"skipped_borderline": skipped}


# ---------------------------------------------------------------------------
# half-plane suites


def _suite_halfplane_roundtrip(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng, 2, 5)
        Z = random_half_plane(rng, n)
        M = inverse_cayley(Z, tol)
        rec.check(opnorm(M) < 1.0, t, "ball image is not a strict contraction", Z=Z)
        rec.check_residual(opnorm(cayley(M, tol) - Z) / (1.0 + opnorm(Z)), 1e-10,
                           t, "half-plane round trip", Z=Z)
        W = random_contraction(rng, n)
        Z2 = cayley(W, tol)
        rec.check(bool(in_half_plane(Z2, tol)), t, "cayley left the half-plane", W=W)
        rec.check_residual(opnorm(inverse_cayley(Z2, tol) - W) / (1.0 + opnorm(W)), 1e-10,
                           t, "contraction round trip", W=W)
        N = neg_inverse(Z, tol)
        rec.check(bool(in_half_plane(N, tol)), t, "negated inverse left the half-plane", Z=Z)
        rec.check_residual(opnorm(neg_inverse(N, tol) - Z) / (1.0 + opnorm(Z)), 1e-10,
                           t, "negated inverse involution", Z=Z)
        X = random_hermitian(rng, n)
        if invertibility_margin(X) > 0.05 * (1.0 + opnorm(X)):
            rec.check_residual(opnorm(neg_inverse(neg_inverse(X, tol), tol) - X) / (1.0 + opnorm(X)),
                               1e-10, t, "Hermitian involution", X=X)
    return {}


_FIX01_WINDOWS = {
    -2.0: (-0.4, 1.2),
    -0.5: (-1.5, 2.0),
    0.3: (-1.5, 2.5),
    0.9: (0.05, 2.0),
}


def _suite_rational_inverse(rng, trials, tol, rec):
    params = sorted(_FIX01_WINDOWS)
    for t in range(trials):
        r = params[t % len(params)]
        lo, hi = _FIX01_WINDOWS[r]
        r_inv = r / (r - 1.0)
        rec.check_residual(abs(mobius_fix01(r, 0.0)), 1e-12, t, f"f_{r} does not fix 0")
        rec.check_residual(abs(mobius_fix01(r, 1.0) - 1.0), 1e-12, t, f"f_{r} does not fix 1")
        xs = np.sort(rng.uniform(lo, hi, size=3))
        for x in xs:
            y = mobius_fix01(r, float(x))
            rec.check_residual(abs(mobius_fix01(r_inv, y) - x) / (1.0 + abs(x)), 1e-9,
                               t, f"scalar inverse law at r={r}")
        ys = [mobius_fix01(r, float(x)) for x in xs]
        rec.check(ys[0] < ys[1] < ys[2], t, f"f_{r} not increasing on its window")
        n = _rand_dim(rng, 2, 5)
        X = random_hermitian_with_spectrum(rng, n, lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo))
        Y = mobius_fix01_matrix(r, X, tol)
        rec.check_residual(opnorm(mobius_fix01_matrix(r_inv, Y, tol) - X) / (1.0 + opnorm(X)), 1e-9,
                           t, f"matrix inverse law at r={r}", X=X)
        Z = random_half_plane(rng, n)
        rec.check(bool(in_half_plane(mobius_fix01_matrix(r, Z, tol), tol)), t,
                  f"f_{r} left the half-plane", Z=Z)
    return {}


def _random_mobius(rng: np.random.Generator, n: int) -> MobiusAutomorphism:
    return MobiusAutomorphism(
        frame=random_invertible(rng, n, max_cond=8.0),
        A=random_hermitian(rng, n, scale=0.7),
        B=random_hermitian(rng, n, scale=0.7),
        C=random_hermitian(rng, n, scale=0.7),
        transpose=bool(rng.integers(2)),
    )


def _suite_mobius_closure(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        g1 = _random_mobius(rng, n)
        g2 = _random_mobius(rng, n)

        def h(Z):
            return apply_mobius(g2, apply_mobius(g1, Z, tol), tol)

        anchor_in = None
        for _ in range(60):
            X0 = random_hermitian(rng, n, scale=0.6)
            try:
                Y0 = h(X0)
            except DomainViolationError:
                continue
            anchor_in = (X0, herm_part(Y0))
            break
        if anchor_in is None:
            rec.fail(t, "no Hermitian anchor found for the composition")
            continue
        try:
            fitted = fit_canonical(h, n, anchor=anchor_in, tol=tol)
        except (ModelMismatchError, DomainViolationError) as exc:
            rec.fail(t, f"composition did not refit: {exc}",
                     frame1=g1.frame, frame2=g2.frame)
            continue
        worst = 0.0
        for k in range(15):
            Z = random_half_plane(rng, n)
            want = h(Z)
            rec.check(bool(in_half_plane(want, tol)), t, "composition left the half-plane", Z=Z)
            got = apply_mobius(fitted, Z, tol)
            worst = max(worst, opnorm(got - want) / (1.0 + opnorm(want)))
        rec.check_residual(worst, 1e-6, t, "refit composition mismatch",
                           frame1=g1.frame, frame2=g2.frame)
    return {}


def _suite_mobius_hermitian(rng, trials, tol, rec):
    skipped = 0
    for t in range(trials):
        n = _rand_dim(rng, 2, 5)
        m = _random_mobius(rng, n)
        X = random_hermitian(rng, n, scale=rng.uniform(0.5, 2.0))
        try:
            Y = apply_mobius(m, X, tol)
        except DomainViolationError:
            skipped += 1
            continue
        rec.check_residual(opnorm(Y - Y.conj().T) / (1.0 + opnorm(Y)), 1e-9,
                           t, "Hermitian input produced non-Hermitian output", X=X)
        Z = random_half_plane(rng, n)
        out = apply_mobius(m, Z, tol)
        rec.check(bool(in_half_plane(out, tol)), t, "half-plane point left the half-plane", Z=Z)
    return {"skipped_outside_domain": skipped}


# ---------------------------------------------------------------------------
# local order isomorphism suites


def _suite_theta_inversion(rng, trials, tol, rec):
    singular_bases = 0
    worst_inverse = 0.0
    worst_two_sided = 0.0
    for t in range(trials):
        n = _rand_dim(rng)
        A = _mixed_rank_hermitian(rng, n) if t % 20 else np.zeros((n, n), dtype=complex)
        if invertibility_margin(A) <= tol.inv_margin * (1.0 + opnorm(A)):
            singular_bases += 1
        X = _sample_shear_member(rng, A, tol)
        if X is None:
            rec.fail(t, "no shear-domain sample found", A=A)
            continue
        eye = np.eye(n)
        Y = shear_apply(A, X, tol)
        rec.check(in_shear_domain(-A, Y, tol), t, "image not in the mirrored domain", A=A, X=X)
        back = shear_apply(-A, Y, tol)
        r1 = opnorm(back - X) / (1.0 + opnorm(X))
        worst_inverse = max(worst_inverse, r1)
        rec.check_residual(r1, 1e-9, t, "inversion identity", A=A, X=X)
        left = np.linalg.solve(X @ A + eye, X)
        right = np.linalg.solve((A @ X + eye).T, X.T).T
        r2 = opnorm(left - right) / (1.0 + opnorm(X))
        worst_two_sided = max(worst_two_sided, r2)
        rec.check_residual(r2, 1e-10, t, "two-sided formula", A=A, X=X)
    return {
        "max_inversion_residual": worst_inverse,
        "max_two_sided_residual": worst_two_sided,
        "singular_bases": singular_bases,
    }


def _suite_order_embedding(rng, trials, tol, rec):
    skipped = 0
    strict_checked = 0
    min_strict_margin = math.inf
    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        A = _mixed_rank_hermitian(rng, n, zero_prob=0.2)
        base = A if t % 4 != 2 else -A
        X = _sample_component_member(rng, base, tol)
        if X is None:
            skipped += 1
            continue
        kind = t % 4
        if kind in (0, 1, 2):
            strict = kind == 1
            Y = None
            for _ in range(60):
                cand = herm_part(X + _psd_step(rng, X, strict=strict))
                if _well_margined(cand @ base + np.eye(n)) and segment_in_shear_domain(base, X, cand, tol):
                    Y = cand
                    break
            if Y is None:
                skipped += 1
                continue
            P = order_iso_apply(base, X, tol)
            Q = order_iso_apply(base, Y, tol)
            scale = 1.0 + max(opnorm(P), opnorm(Q))
            gap = float(hermitian_eigen(herm_part(Q - P), tol).values[0])
            rec.check(gap >= -1e-8 * scale, t,
                      f"ordered pair lost order (margin {gap:.3e})", A=base, X=X, Y=Y)
            if strict:
                strict_checked += 1
                min_strict_margin = min(min_strict_margin, gap / scale)
                rec.check(loewner_compare(P, Q, tol).lt, t,
                          "strict pair no longer strict", A=base, X=X, Y=Y)
            back_X = order_iso_apply(-base, P, tol)
            back_Y = order_iso_apply(-base, Q, tol)
            rec.check(float(hermitian_eigen(herm_part(back_Y - back_X), tol).values[0])
                      >= -1e-8 * (1.0 + max(opnorm(back_X), opnorm(back_Y))), t,
                      "pulled-back pair lost order", A=base, X=X, Y=Y)
        else:
            Y = None
            for _ in range(60):
                cand = herm_part(X + _indefinite_step(rng, X))
                if (_well_margined(cand @ base + np.eye(n))
                        and segment_in_shear_domain(base, X, cand, tol)):
                    Y = cand
                    break
            if Y is None:
                skipped += 1
                continue
            P = order_iso_apply(base, X, tol)
            Q = order_iso_apply(base, Y, tol)
            rec.check(loewner_compare(P, Q, tol).incomparable, t,
                      "incomparable pair became comparable", A=base, X=X, Y=Y)
    if strict_checked:
        return {"skipped": skipped, "strict_checked": strict_checked,
                "min_strict_margin": min_strict_margin}
    return {"skipped": skipped}


def _suite_interval_criterion(rng, trials, tol, rec):
    skipped = 0
    true_count = 0
    samples_per_instance = 50
    for t in range(trials):
        n = int(rng.integers(2, 6))
        A = _mixed_rank_hermitian(rng, n, zero_prob=0.2, lo=0.4, hi=2.0)
        X = None
        for _ in range(200):
            cand = herm_part(random_psd(rng, n) * rng.uniform(0.3, 1.4))
            if in_zero_component(A, cand, tol):
                X = cand
                break
        if X is None:
            skipped += 1
            continue
        Xh = sqrt_psd(X, tol)
        K = herm_part(Xh @ A @ Xh)
        lam = float(hermitian_eigen(K, tol).values[0])
        if abs(lam + 1.0) < 1e-4:
            skipped += 1
            continue
        crit = interval_below_criterion(A, X, tol)
        rec.check(crit == (lam > -1.0), t, "criterion disagrees with its spectral form", A=A, X=X)
        if crit:
            true_count += 1
            ok = True
            for j in range(samples_per_instance):
                if j < 8:
                    S = herm_part((j + 1) / 8.0 * X)
                else:
                    S = herm_part(Xh @ random_effect(rng, n) @ Xh)
                if not in_zero_component(A, S, tol):
                    rec.fail(t, "interval point escaped although criterion holds", A=A, X=X, S=S)
                    ok = False
                    break
            if not ok:
                continue
        else:
            t_star = -1.0 / lam
            t_w = min(1.0, t_star + 0.5 * (1.0 - t_star))
            W = herm_part(t_w * X)
            rec.check(not in_zero_component(A, W, tol), t,
                      "criterion refuted but witness still inside", A=A, X=X, W=W)
    return {"skipped_borderline": skipped, "criterion_true": true_count}


def _suite_translation_identity(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng)
        A = _mixed_rank_hermitian(rng, n)
        eye = np.eye(n)
        X0 = _sample_shear_member(rng, A, tol)
        if X0 is None:
            rec.fail(t, "no shear-domain anchor found", A=A)
            continue
        A2 = translated_base(A, X0, tol)
        X = None
        for _ in range(200):
            cand = random_hermitian(rng, n, scale=rng.uniform(0.2, 1.0))
            if _well_margined((X0 + cand) @ A + eye) and _well_margined(cand @ A2 + eye):
                X = cand
                break
        if X is None:
            rec.fail(t, "no translated sample found", A=A, X0=X0)
            continue
        lhs = shear_apply(A, herm_part(X0 + X), tol) - shear_apply(A, X0, tol)
        Mi = np.linalg.inv(X0 @ A + eye)
        rhs = Mi @ shear_apply(A2, X, tol) @ Mi.conj().T
        rec.check_residual(opnorm(lhs - rhs) / (1.0 + opnorm(lhs)), 1e-9,
                           t, "translation identity", A=A, X0=X0, X=X)
    return {}


def _suite_conjugation_identity(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng)
        A = _mixed_rank_hermitian(rng, n)
        T = random_invertible(rng, n, max_cond=15.0)
        A2 = conjugated_base(A, T, tol)
        X = _sample_shear_member(rng, A, tol)
        if X is None:
            rec.fail(t, "no shear-domain sample found", A=A)
            continue
        S = np.linalg.inv(T).conj().T
        lhs = shear_apply(A2, herm_part(S @ X @ S.conj().T), tol)
        rhs = S @ shear_apply(A, X, tol) @ S.conj().T
        rec.check_residual(opnorm(lhs - rhs) / (1.0 + opnorm(rhs)), 1e-9,
                           t, "conjugation identity", A=A, T=T, X=X)
    return {}


def _suite_congruence_orbit(rng, trials, tol, rec):
    rescaled = 0
    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        A = _mixed_rank_hermitian(rng, n)
        X = None
        for _ in range(200):
            cand = random_hermitian(rng, n, scale=rng.uniform(0.2, 0.8))
            if in_zero_component(A, cand, tol):
                X = cand
                break
        if X is None:
            rec.fail(t, "no component sample found", A=A)
            continue
        G = None
        for _ in range(6):
            try:
                G = congruence_orbit(A, X, tol)
                break
            except PathSearchError:
                X = herm_part(0.6 * X)
                rescaled += 1
        if G is None:
            rec.fail(t, "orbit factor failed even after shrinking", A=A, X=X)
            continue
        target = shear_apply(X, A, tol)
        got = herm_part(G @ A @ G.conj().T)
        rec.check_residual(opnorm(got - target) / (1.0 + opnorm(A)), 1e-8,
                           t, "orbit congruence residual", A=A, X=X)
        rec.check(tuple(inertia(target, tol)) == tuple(inertia(A, tol)), t,
                  "orbit image changed inertia", A=A, X=X)
        rec.check(is_invertible(G, tol), t, "orbit factor is singular", A=A, X=X)
    return {"rescaled": rescaled}


def _suite_component_criterion(rng, trials, tol, rec):
    members = 0
    max_nodes_seen = 0
    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        A = _mixed_rank_hermitian(rng, n, zero_prob=0.25)
        if opnorm(A) <= tol.psd_tol:
            A = herm_part(A + np.eye(n))
        scale = (0.3, 1.0, 2.5)[t % 3]
        X = random_hermitian(rng, n, scale=scale)
        crit = in_zero_component(A, X, tol)
        res = path_to_zero(A, X, tol, seed=1000 + t, max_nodes=3000 if crit else 96)
        max_nodes_seen = max(max_nodes_seen, res.nodes_used)
        if crit:
            members += 1
            rec.check(res.found, t, "criterion says member but no path was found", A=A, X=X)
        else:
            rec.check(not res.found, t, "path found into a point the criterion rejects", A=A, X=X)
    return {"members": members, "max_nodes_used": max_nodes_seen}


def _suite_parameter_recovery(rng, trials, tol, rec):
    mismatch_checked = 0
    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        A = _mixed_rank_hermitian(rng, n) if t % 10 else np.zeros((n, n), dtype=complex)
        T = normalize_phase(random_invertible(rng, n, max_cond=8.0))
        transpose = bool(rng.integers(2))
        scaleA = 1.0 + opnorm(A)
        spec = LocalIsoSpec(base=A, frame=T, transpose=transpose)

        got = identify_parameters(lambda H: apply_local_iso(spec, H, tol), n, tol=tol)
        rec.check_residual(opnorm(got.base - A) / scaleA, 1e-5, t, "derivative-probe base recovery", A=A, T=T)
        rec.check_residual(opnorm(got.frame - T) / (1.0 + opnorm(T)), 1e-5,
                           t, "derivative-probe frame recovery", A=A, T=T)
        rec.check(got.transpose == transpose, t, "derivative-probe transpose flag wrong", A=A, T=T)

        mob = MobiusAutomorphism(frame=T, A=A, B=np.zeros((n, n)), C=np.zeros((n, n)), transpose=transpose)
        fitted = fit_canonical(lambda Z: apply_mobius(mob, Z, tol), n, tol=tol)
        rec.check_residual(opnorm(fitted.A - A) / scaleA, 1e-7, t, "half-plane base recovery", A=A, T=T)
        rec.check_residual(opnorm(fitted.frame - T) / (1.0 + opnorm(T)), 1e-7,
                           t, "half-plane frame recovery", A=A, T=T)
        rec.check(fitted.transpose == transpose, t, "half-plane transpose flag wrong", A=A, T=T)

        if t % 3 == 0:
            full = _random_mobius(rng, n)
            X0 = None
            for _ in range(60):
                cand = random_hermitian(rng, n, scale=0.6)
                try:
                    Y0 = apply_mobius(full, cand, tol)
                except DomainViolationError:
                    continue
                X0 = cand
                break
            if X0 is not None:
                refit = fit_canonical(lambda Z: apply_mobius(full, Z, tol), n,
                                      anchor=(X0, herm_part(Y0)), tol=tol)
                worst = 0.0
                for _ in range(5):
                    Z = random_half_plane(rng, n)
                    want = apply_mobius(full, Z, tol)
                    worst = max(worst, opnorm(apply_mobius(refit, Z, tol) - want) / (1.0 + opnorm(want)))
                rec.check_residual(worst, 1e-7, t, "anchored refit mismatch", frame=full.frame)

        if t % 10 == 5:
            mismatch_checked += 1

            def crooked(H, _s=1.0 + 0.2 * float(rng.random())):
                M = np.asarray(H, dtype=complex)
                return herm_part(M + 0.05 * _s * M @ M)

            try:
                identify_parameters(crooked, n, tol=tol)
                rec.fail(t, "non-model evaluator was not rejected")
            except ModelMismatchError:
                pass
    return {"mismatch_checked": mismatch_checked}


# ---------------------------------------------------------------------------
# block / classification suites


def _suite_block_involution(rng, trials, tol, rec):
    example_checked = False
    for t in range(trials):
        n = _rand_dim(rng, 2, 5)
        m = int(rng.integers(0, n + 1))
        p = int(rng.integers(0, m + 1))
        spec = BlockMapSpec(n, m, p)
        X = _block_sample(rng, spec)
        rec.check(in_block_domain(spec, X, tol), t, "constructed sample missed the domain", X=X)
        Y = block_map_apply(spec, X, tol)
        rec.check(in_block_domain(spec.dual, Y, tol), t,
                  f"image corner inertia is not ({m - p}, 0, {p})", X=X, Y=Y)
        back = block_map_apply(spec.dual, Y, tol)
        rec.check_residual(opnorm(back - X) / (1.0 + opnorm(X)), 1e-9,
                           t, f"involution on class (m={m}, p={p})", X=X)
        if not example_checked:
            example_checked = True
            W = np.array([[2.0, 1.0], [1.0, 3.0]], dtype=complex)
            want = np.array([[-0.5, 0.5j], [-0.5j, 2.5]], dtype=complex)
            gotW = block_map_apply(BlockMapSpec(2, 1, 1), W, tol)
            rec.check_residual(opnorm(gotW - want), 1e-12, t, "worked 2x2 example", W=W)
    return {}


def _suite_bordered_identity(rng, trials, tol, rec):
    instances = 0
    for n in range(2, 6):
        for (m, p) in _all_classes(n):
            spec = BlockMapSpec(n, m, p)
            for j in range(trials):
                instances += 1
                X = _block_sample(rng, spec)
                E = bordered_embedding(m, X, tol)
                R = bordered_arrangement(m, block_map_apply(spec, X, tol), tol)
                scale = 1.0 + opnorm(E) * opnorm(R)
                res = opnorm(E @ R + np.eye(2 * n - m)) / scale
                rec.check_residual(res, 1e-9, instances, f"bordered identity (n={n}, m={m}, p={p})", X=X)
                got = tuple(inertia(herm_part(E), tol))
                rec.check(got == (n + p - m, 0, n - p), instances,
                          f"bordered inertia {got} != ({n + p - m}, 0, {n - p})", X=X)
    return {"instances": instances}


def _suite_block_monotonicity(rng, trials, tol, rec):
    skipped = 0
    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        m = int(rng.integers(1, n + 1))
        p = int(rng.integers(0, m + 1))
        spec = BlockMapSpec(n, m, p)
        X = _block_sample(rng, spec)
        strict = t % 3 == 1
        indefinite = t % 3 == 2
        Y = None
        for _ in range(60):
            D = _indefinite_step(rng, X) if indefinite else _psd_step(rng, X, strict=strict)
            cand = herm_part(X + D)
            if all(in_block_domain(spec, herm_part(X + tau * D), tol)
                   for tau in np.linspace(0.0, 1.0, 9)):
                Y = cand
                break
        if Y is None:
            skipped += 1
            continue
        FX = block_map_apply(spec, X, tol)
        FY = block_map_apply(spec, Y, tol)
        scale = 1.0 + max(opnorm(FX), opnorm(FY))
        if indefinite:
            rec.check(loewner_compare(FX, FY, tol).incomparable, t,
                      "incomparable pair became comparable", X=X, Y=Y)
            continue
        gap = float(hermitian_eigen(herm_part(FY - FX), tol).values[0])
        rec.check(gap >= -1e-8 * scale, t,
                  f"ordered pair lost order under the block map (margin {gap:.3e})", X=X, Y=Y)
        if strict:
            rec.check(loewner_compare(FX, FY, tol).lt, t, "strict pair no longer strict", X=X, Y=Y)
        back_gap = float(hermitian_eigen(herm_part(
            block_map_apply(spec.dual, FY, tol) - block_map_apply(spec.dual, FX, tol)), tol).values[0])
        rec.check(back_gap >= -1e-8 * (1.0 + opnorm(X) + opnorm(Y)), t,
                  "pulled-back pair lost order", X=X, Y=Y)
    return {"skipped": skipped}


def _suite_growth_ranks(rng, trials, tol, rec):
    grid_stay = [0.5, 1.0, 10.0, 100.0, 1e4]
    grid_exit = [0.5, 1.0, 10.0, 100.0, 1e4, 1e6]
    rank_pairs: Dict[tuple, tuple] = {}
    for n in range(2, 5):
        for (m, p) in _all_classes(n):
            spec = BlockMapSpec(n, m, p)
            for j in range(max(1, trials // 4)):
                X = _block_sample(rng, spec)
                for positive in (True, False):
                    Y = growth_direction(spec, X, positive=positive, tol=tol)
                    sig = inertia(Y, tol)
                    want_rank = n + p - m if positive else n - p
                    got_rank = sig.n_pos if positive else sig.n_neg
                    semidef_ok = (sig.n_neg == 0) if positive else (sig.n_pos == 0)
                    rec.check(semidef_ok and got_rank == want_rank, 0,
                              f"direction rank {got_rank} != {want_rank} on (n={n}, m={m}, p={p})", X=X, Y=Y)
                    for c in grid_stay:
                        if not in_block_domain(spec, herm_part(X + c * Y), tol):
                            rec.fail(0, f"stable direction exited at c={c} on (n={n}, m={m}, p={p})", X=X, Y=Y)
                            break
                if j == 0:
                    rank_pairs[(n, m, p)] = (n + p - m, n - p)
            if n <= 3:
                X = _block_sample(rng, spec)
                for positive in (True, False):
                    k = (n + p - m) if positive else (n - p)
                    if k >= n:
                        continue
                    for _ in range(5):
                        V = random_unitary(rng, n)[:, : k + 1]
                        D = herm_part(V @ np.diag(rng.uniform(0.3, 1.0, size=k + 1)).astype(complex) @ V.conj().T)
                        if not positive:
                            D = -D
                        exited = any(not in_block_domain(spec, herm_part(X + c * D), tol)
                                     for c in grid_exit)
                        rec.check(exited, 0,
                                  f"rank-{k + 1} {'PSD' if positive else 'NSD'} direction never exited "
                                  f"(n={n}, m={m}, p={p})", X=X, D=D)
    for n in range(2, 5):
        pairs = [rank_pairs[(n, m, p)] for (m, p) in _all_classes(n)]
        rec.check(len(set(pairs)) == class_count(n), 0,
                  f"stable-rank invariants fail to separate the {class_count(n)} classes at n={n}")
    return {"classes_tested": len(rank_pairs)}


def _suite_class_count(rng, trials, tol, rec):
    counts = {}
    for n in range(2, 7):
        want = (n + 2) * (n + 1) // 2
        rec.check(class_count(n) == want, n, f"closed-form count wrong at n={n}")
        reps = enumerate_signatures(n)
        rec.check(len(reps) == want, n, f"representative enumeration wrong at n={n}")
        seen = {signature_class(R, tol)[:2] for R in reps}
        rec.check(len(seen) == want, n, f"representatives collapse into {len(seen)} classes at n={n}")
        for i, R in enumerate(reps):
            for Q in reps[i + 1:]:
                if are_equivalent(R, Q, tol):
                    rec.fail(n, "distinct representatives reported equivalent", R=R, Q=Q)
        for R in reps[:: max(1, len(reps) // 4)]:
            S = random_invertible(rng, n, max_cond=20.0)
            rec.check(are_equivalent(R, herm_part(S @ R @ S.conj().T), tol), n,
                      "congruence changed the signature class", R=R, S=S)
        counts[str(n)] = class_count(n)
    return {"counts": counts}


# ---------------------------------------------------------------------------
# effect-algebra suites


def _random_effect_auto(rng: np.random.Generator, n: int) -> EffectAutoSpec:
    return EffectAutoSpec(frame=random_invertible(rng, n, max_cond=10.0), transpose=bool(rng.integers(2)))


def _random_fpq(rng: np.random.Generator, n: int) -> FpqSpec:
    for _ in range(100):
        T = random_contraction(rng, n, strict_margin=0.05)
        if is_invertible(T) and invertibility_margin(T) > 0.05:
            return FpqSpec(p=float(rng.uniform(0.15, 0.85)), q=float(-rng.uniform(0.3, 3.0)),
                           frame=T, transpose=bool(rng.integers(2)))
    raise RuntimeError("failed to draw a bijective contraction")


def _suite_effect_fixpoints(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng, 2, 5)
        zero = np.zeros((n, n))
        eye = np.eye(n)
        if t % 2 == 0:
            spec = _random_effect_auto(rng, n)
            phi = lambda X: effect_automorphism(spec, X, tol)
            frame = spec.frame
        else:
            spec = _random_fpq(rng, n)
            phi = lambda X: rational_effect_automorphism(spec, X, tol)
            frame = spec.frame
        rec.check_residual(opnorm(phi(zero)), 1e-10, t, "zero endpoint moved", frame=frame)
        rec.check_residual(opnorm(phi(eye) - eye), 1e-10, t, "identity endpoint moved", frame=frame)
        X = random_effect(rng, n)
        vals = hermitian_eigen(phi(X), tol).values
        rec.check(float(vals[0]) >= -1e-8 and float(vals[-1]) <= 1.0 + 1e-8, t,
                  "image left the effect interval", X=X, frame=frame)
    return {}


def _suite_effect_order(rng, trials, tol, rec):
    for t in range(trials):
        n = _rand_dim(rng, 2, 5)
        use_frame_form = t % 2 == 0
        if use_frame_form:
            spec = _random_effect_auto(rng, n)
            phi = lambda M: effect_automorphism(spec, M, tol)
        else:
            spec = _random_fpq(rng, n)
            phi = lambda M: rational_effect_automorphism(spec, M, tol)
        strict = t % 4 == 1
        X, Y = _effect_pair(rng, n, strict=strict)
        FX, FY = phi(X), phi(Y)
        scale = 1.0 + max(opnorm(FX), opnorm(FY))
        gap = float(hermitian_eigen(herm_part(FY - FX), tol).values[0])
        rec.check(gap >= -1e-8 * scale, t, f"ordered effects lost order (margin {gap:.3e})", X=X, Y=Y)
        if strict:
            rec.check(loewner_compare(FX, FY, tol).lt, t, "strict effect pair no longer strict", X=X, Y=Y)
        if use_frame_form and not spec.transpose:
            inv_spec = EffectAutoSpec(frame=np.linalg.inv(spec.frame))
            back = effect_automorphism(inv_spec, FX, tol)
            rec.check_residual(opnorm(back - X) / (1.0 + opnorm(X)), 1e-9,
                               t, "inverse frame does not undo the map", X=X, frame=spec.frame)
        if not use_frame_form:
            f1, f2, f3, f4 = rational_effect_factors(spec, tol)
            chained = f4(f3(f2(f1(X))))
            rec.check_residual(opnorm(chained - FX) / (1.0 + opnorm(FX)), 1e-9,
                               t, "four-factor route disagrees with direct route", X=X, frame=spec.frame)
            sx, sy = X, Y
            for stage, f in enumerate((f1, f2, f3, f4)):
                sx, sy = f(sx), f(sy)
                stage_gap = float(hermitian_eigen(herm_part(sy - sx), tol).values[0])
                rec.check(stage_gap >= -1e-8 * (1.0 + max(opnorm(sx), opnorm(sy))), t,
                          f"factor {stage + 1} lost order", X=X, Y=Y)
        D = None
        for _ in range(60):
            cand_step = _indefinite_step(rng, X) * 0.3
            cand = herm_part(X + cand_step)
            vals = hermitian_eigen(cand, tol).values
            if float(vals[0]) >= 1e-3 and float(vals[-1]) <= 1.0 - 1e-3:
                D = cand
                break
        if D is not None and loewner_compare(X, D, tol).incomparable:
            rec.check(loewner_compare(phi(X), phi(D), tol).incomparable, t,
                      "incomparable effects became comparable", X=X, D=D)
    return {}


def _suite_effect_embedding(rng, trials, tol, rec):
    n_fix = 2
    eye2 = np.eye(n_fix)
    fixture = EffectEmbeddingSpec(frame=eye2, base=np.zeros((n_fix, n_fix)),
                                  offset=np.zeros((n_fix, n_fix)), value_at_one=2.0 * eye2)
    flags = endpoint_continuity(fixture, tol)
    rec.check(flags == {"zero": True, "one": False}, 0,
              f"fixture continuity flags {flags} != {{zero: True, one: False}}")
    rec.check_residual(opnorm(effect_embedding_map(fixture, np.zeros((n_fix, n_fix)), tol)), 1e-12,
                       0, "fixture does not fix the zero endpoint")
    rec.check_residual(opnorm(effect_embedding_map(fixture, 0.5 * eye2, tol) - 0.5 * eye2), 1e-12,
                       0, "fixture interior is not the identity")
    rec.check_residual(opnorm(effect_embedding_map(fixture, eye2, tol) - 2.0 * eye2), 1e-12,
                       0, "fixture override at the identity not honored")

    for t in range(trials):
        n = _rand_dim(rng, 2, 4)
        eye = np.eye(n)
        frame = random_invertible(rng, n, max_cond=10.0)
        base = random_hermitian_with_spectrum(rng, n, -0.8, 2.0)
        offset = random_hermitian(rng, n, scale=0.5)
        v0 = herm_part(offset - random_psd(rng, n)) if rng.random() < 0.5 else None
        spec_plain = EffectEmbeddingSpec(frame=frame, base=base, offset=offset)
        interior_top = effect_embedding_map(spec_plain, eye, tol)
        v1 = herm_part(interior_top + random_psd(rng, n)) if rng.random() < 0.5 else None
        spec = EffectEmbeddingSpec(frame=frame, base=base, offset=offset,
                                   value_at_zero=v0, value_at_one=v1)
        pick = rng.random()
        if pick < 0.25:
            X = np.zeros((n, n))
            _, Y = _effect_pair(rng, n)
        elif pick < 0.5:
            X, _ = _effect_pair(rng, n)
            Y = eye
        else:
            X, Y = _effect_pair(rng, n)
        FX = effect_embedding_map(spec, X, tol)
        FY = effect_embedding_map(spec, Y, tol)
        gap = float(hermitian_eigen(herm_part(FY - FX), tol).values[0])
        rec.check(gap >= -1e-8 * (1.0 + max(opnorm(FX), opnorm(FY))), t,
                  f"embedding lost order (margin {gap:.3e})", X=X, Y=Y)
        flags = endpoint_continuity(spec, tol)
        want_zero = v0 is None or opnorm(v0 - offset) <= 1e-8 * (1.0 + opnorm(offset))
        want_one = v1 is None or opnorm(v1 - interior_top) <= 1e-8 * (1.0 + opnorm(interior_top))
        rec.check(flags["zero"] == want_zero and flags["one"] == want_one, t,
                  f"continuity flags {flags} disagree with construction", frame=frame)
        A, B = _effect_pair(rng, n)
        C = None
        for _ in range(60):
            cand = herm_part(A + 0.3 * _indefinite_step(rng, A))
            vals = hermitian_eigen(cand, tol).values
            if float(vals[0]) >= 1e-3 and float(vals[-1]) <= 1.0 - 1e-3 and loewner_compare(A, cand, tol).incomparable:
                C = cand
                break
        if C is not None:
            rec.check(loewner_compare(effect_embedding_map(spec, A, tol),
                                      effect_embedding_map(spec, C, tol), tol).incomparable, t,
                      "incomparable effects embedded comparably", A=A, C=C)
    return {"fixture_flags": {"zero": True, "one": False}}


# ---------------------------------------------------------------------------
# scalar monotonicity suites


def _suite_loewner_consistency(rng, trials, tol, rec):
    per_order = max(trials // 5, 20)
    worst_sqrt = math.inf
    for order in range(2, 7):
        report = is_matrix_monotone(builtin_function("sqrt"), order, trials=per_order,
                                    seed=int(rng.integers(0, 2**31)), tol=tol)
        worst_sqrt = min(worst_sqrt, report.min_loewner_eigenvalue)
        rec.check(report.passed and report.conclusive, order,
                  f"sqrt failed the monotonicity test at order {order}")

    log_report = is_matrix_monotone(builtin_function("log"), 3, trials=max(trials // 10, 20),
                                    seed=int(rng.integers(0, 2**31)), tol=tol)
    rec.check(log_report.passed, 0, "log failed the monotonicity test")

    for p in (0.25, 0.5, 0.75):
        rep = is_matrix_monotone(builtin_function(f"fp:{p}"), 3, trials=max(trials // 10, 20),
                                 seed=int(rng.integers(0, 2**31)), tol=tol)
        rec.check(rep.passed and rep.conclusive, 0, f"fp:{p} failed the monotonicity test")

    rep = is_matrix_monotone(builtin_function("rational:0.5"), 3, trials=max(trials // 10, 20),
                             seed=int(rng.integers(0, 2**31)), tol=tol)
    rec.check(rep.passed, 0, "rational:0.5 failed the monotonicity test")

    square = builtin_function("square")
    sq_report = is_matrix_monotone(square, 2, trials=max(trials // 5, 50),
                                   seed=int(rng.integers(0, 2**31)), tol=tol)
    rec.check(not sq_report.passed and sq_report.conclusive, 0, "square slipped through at order 2")
    if sq_report.witness_nodes is not None:
        lm = loewner_matrix(square, sq_report.witness_nodes)
        rec.check(lm.min_eigenvalue < 0.0, 0, "square witness nodes are not a refutation")
    if sq_report.witness_pair is not None:
        X, Y = sq_report.witness_pair
        rec.check(loewner_compare(X, Y, tol).leq, 0, "square witness pair is not ordered", X=X, Y=Y)
        gap = float(hermitian_eigen(herm_part(Y @ Y - X @ X), tol).values[0])
        rec.check(gap < 0.0, 0, "square witness pair does not refute", X=X, Y=Y)
    rec.check(sq_report.witness_nodes is not None or sq_report.witness_pair is not None,
              0, "square refutation carries no witness")

    found_nodes = False
    found_pair = False
    sub = np.random.default_rng(int(rng.integers(0, 2**31)))
    for _ in range(400):
        nodes = np.sort(sub.uniform(0.05, 4.0, size=2))
        if nodes[1] - nodes[0] > 1e-6 and loewner_matrix(square, nodes).min_eigenvalue < -1e-10:
            found_nodes = True
            break
    for _ in range(400):
        X = random_hermitian_with_spectrum(sub, 2, 0.05, 4.0)
        D = random_psd(sub, 2)
        Y = herm_part(X + D)
        if float(hermitian_eigen(herm_part(Y @ Y - X @ X), tol).values[0]) < -1e-10:
            found_pair = True
            break
    rec.check(found_nodes and found_pair, 0,
              "the two refutation routes disagree about the square function")

    fuzzy = ScalarFunction(math.sqrt, (0.0, math.inf), name="sqrt-table", approximate=True)
    rep = is_matrix_monotone(fuzzy, 2, trials=40, seed=int(rng.integers(0, 2**31)), tol=tol)
    rec.check(not rep.conclusive, 0, "approximate function produced a conclusive verdict")
    return {"min_sqrt_loewner_eigenvalue": worst_sqrt}


def _random_pick(rng: np.random.Generator) -> PickRepresentation:
    a = float(rng.uniform(-3.0, 1.0))
    b = a + float(rng.uniform(0.5, 3.0))
    atoms = []
    for _ in range(int(rng.integers(0, 4))):
        side = rng.random() < 0.5
        y = a - float(rng.uniform(0.05, 2.0)) if side else b + float(rng.uniform(0.05, 2.0))
        atoms.append((y, float(rng.uniform(0.1, 2.0))))
    return PickRepresentation(
        c=float(rng.normal()),
        d=float(rng.uniform(0.0, 1.5)),
        atoms=tuple(atoms),
        interval=(a, b),
    )


def _suite_pick_evaluation(rng, trials, tol, rec):
    min_margin = math.inf
    for t in range(trials):
        rep = _random_pick(rng)
        if rep.d == 0.0 and not rep.atoms:
            continue
        n = _rand_dim(rng, 2, 4)
        Z = random_half_plane(rng, n)
        out = pick_eval(rep, Z, tol)
        margin = float(hermitian_eigen(herm_part((out - out.conj().T) / 2j), tol).values[0])
        min_margin = min(min_margin, margin)
        rec.check(margin > 0.0, t, f"half-plane image margin {margin:.3e} <= 0", Z=Z)
        a, b = rep.interval
        pad = 0.05 * (b - a)
        X = random_hermitian_with_spectrum(rng, n, a + pad, b - pad)
        direct = pick_eval(rep, X, tol)
        f = rep.scalar_function()
        via_spectrum = spectral_apply(X, f, domain=f.domain, tol=tol)
        rec.check_residual(opnorm(direct - via_spectrum) / (1.0 + opnorm(direct)), 1e-9,
                           t, "matrix value disagrees with the spectral route", X=X)
        x = float(rng.uniform(a + pad, b - pad))
        rec.check_residual(abs(pick_eval(rep, x, tol) - f(x)) / (1.0 + abs(f(x))), 1e-12,
                           t, "scalar evaluation mismatch")
        if t % 20 == 0:
            mono = is_matrix_monotone(f, 2, trials=30, seed=int(rng.integers(0, 2**31)), tol=tol)
            rec.check(mono.passed, t, "a positive representation failed the monotonicity test")
    atom = PickRepresentation(c=0.0, d=0.0, atoms=((0.0, 1.0),), interval=(0.4, 2.5))
    for t in range(20):
        X = random_hermitian_with_spectrum(rng, 3, 0.5, 2.4)
        rec.check_residual(opnorm(pick_eval(atom, X, tol) + np.linalg.inv(X)) / (1.0 + opnorm(X)),
                           1e-10, t, "atom at the origin is not the negated inverse", X=X)
    return {"min_half_plane_margin": min_margin}


# ---------------------------------------------------------------------------
# serialization / reporting suites


def _suite_serialization_roundtrip(rng, trials, tol, rec):
    for t in range(trials):
        rows = int(rng.integers(1, 9))
        cols = rows if t % 2 else int(rng.integers(1, 9))
        M = (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols)))
        M = M * 10.0 ** rng.uniform(-9.0, 6.0)
        if t % 7 == 0:
            M[0, 0] = 0.0
        back = parse_matrix_text(matrix_to_text(M))
        rec.check(back.shape == M.shape and bool(np.array_equal(back, M)), t,
                  "serialization is not bit-exact", M=M)
        if rows == cols:
            H = random_hermitian(rng, rows)
            back_h = parse_matrix_text(matrix_to_text(H), hermitian=True)
            rec.check(bool(np.array_equal(back_h, H)), t, "Hermitian round trip not exact", H=H)
    for bad, label in [
        ('{"rows": 1, "cols": 1', "truncated JSON"),
        ('{"rows": 2, "cols": 2, "data": [[[1, 0]], [[1, 0], [2, 0]]]}', "ragged rows"),
        ('{"rows": 1, "cols": 1, "data": [[[Infinity, 0]]]}', "non-finite entry"),
        ('{"rows": 1, "cols": 1, "data": [[[1, 0, 0]]]}', "triple entry"),
        ('{"rows": 1, "cols": 1}', "missing data"),
    ]:
        try:
            parse_matrix_text(bad)
            rec.fail(0, f"malformed input accepted: {label}")
        except MalformedInputError:
            pass
    return {}


def _suite_report_determinism(rng, trials, tol, rec):
    names = ["halfplane-roundtrip", "rank-one-trace", "inertia-congruence", "class-count"]
    for t in range(trials):
        name = names[t % len(names)]
        seed = int(rng.integers(0, 2**31))
        small = 1 if name == "class-count" else 20
        r1 = run_suite(name, seed=seed, trials=small, tol=tol)
        r2 = run_suite(name, seed=seed, trials=small, tol=tol)
        rec.check(r1.to_json(include_timing=False) == r2.to_json(include_timing=False), t,
                  f"replayed report for '{name}' differs")
        d1, d2 = r1.to_dict(), r2.to_dict()
        d1.pop("elapsed_seconds"), d2.pop("elapsed_seconds")
        rec.check(json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True), t,
                  f"non-timing fields of '{name}' differ")
    return {}


# ---------------------------------------------------------------------------
# registry


@dataclasses.dataclass(frozen=True)
class _SuiteDef:
    fn: Callable
    default_trials: int
    description: str


SUITES: Dict[str, _SuiteDef] = {
    "eigen-residual": _SuiteDef(_suite_eigen_residual, 120,
                                "eigendecomposition residual and unitarity, both engines, dims up to 16"),
    "inertia-congruence": _SuiteDef(_suite_inertia_congruence, 300,
                                    "inertia invariance under congruence and scaling"),
    "order-antisymmetry": _SuiteDef(_suite_order_antisymmetry, 300,
                                    "semidefinite order: reflexivity, antisymmetry, negation flip, strictness"),
    "spectral-composition": _SuiteDef(_suite_spectral_composition, 200,
                                      "functional calculus composes and matches across engines"),
    "rank-one-trace": _SuiteDef(_suite_rank_one_trace, 500,
                                "rank-one domination criterion against the direct eigenvalue oracle"),
    "interval-iso": _SuiteDef(_suite_interval_iso, 200,
                              "affine interval isomorphism: endpoints, inverse, order both ways"),
    "projection-dominance": _SuiteDef(_suite_projection_dominance, 200,
                                      "closed-form dominance radius against eigenvalue checks in dim 2"),
    "halfplane-roundtrip": _SuiteDef(_suite_halfplane_roundtrip, 300,
                                     "cayley transform round trips; negated inverse is an involution"),
    "rational-inverse": _SuiteDef(_suite_rational_inverse, 200,
                                  "the 0,1-fixing rational family: inverse law, order, half-plane stability"),
    "mobius-closure": _SuiteDef(_suite_mobius_closure, 12,
                                "compositions of upper-half-plane automorphisms refit in the same family"),
    "mobius-hermitian": _SuiteDef(_suite_mobius_hermitian, 200,
                                  "automorphisms send Hermitian points to Hermitian points"),
    "theta-inversion": _SuiteDef(_suite_theta_inversion, 500,
                                 "shear map: mirrored base inverts it; left and right formulas agree"),
    "order-embedding": _SuiteDef(_suite_order_embedding, 500,
                                 "gated pairs stay ordered both ways; strict stays strict; incomparable stays so"),
    "interval-criterion": _SuiteDef(_suite_interval_criterion, 200,
                                    "spectral criterion for whole-interval membership vs dense sampling"),
    "translation-identity": _SuiteDef(_suite_translation_identity, 200,
                                      "shifting the argument equals the translated-base map up to congruence"),
    "conjugation-identity": _SuiteDef(_suite_conjugation_identity, 200,
                                      "frame congruence commutes with the shear map via the conjugated base"),
    "congruence-orbit": _SuiteDef(_suite_congruence_orbit, 200,
                                  "the shear image of the base is congruent to it; inertia is preserved"),
    "component-criterion": _SuiteDef(_suite_component_criterion, 300,
                                     "inertia-based component membership against randomized path search"),
    "parameter-recovery": _SuiteDef(_suite_parameter_recovery, 100,
                                    "black-box recovery of base, frame and transpose flag by both routes"),
    "block-involution": _SuiteDef(_suite_block_involution, 240,
                                  "corner-inverting block map is an involution between dual classes"),
    "bordered-identity": _SuiteDef(_suite_bordered_identity, 200,
                                   "bordered embedding: negated inverse reproduces the block map; fixed inertia"),
    "block-monotonicity": _SuiteDef(_suite_block_monotonicity, 200,
                                    "block map preserves order both ways on inertia-stable segments"),
    "growth-ranks": _SuiteDef(_suite_growth_ranks, 40,
                              "extremal stable-direction ranks hold, higher ranks exit, ranks separate classes"),
    "class-count": _SuiteDef(_suite_class_count, 1,
                             "class census: closed form, enumeration, congruence invariance"),
    "effect-fixpoints": _SuiteDef(_suite_effect_fixpoints, 500,
                                  "effect automorphisms fix 0 and I and stay inside the interval"),
    "effect-order": _SuiteDef(_suite_effect_order, 200,
                              "effect automorphisms preserve order both ways; four-factor route agrees"),
    "effect-embedding": _SuiteDef(_suite_effect_embedding, 200,
                                  "endpoint-overridable embeddings keep order; continuity flags are right"),
    "loewner-consistency": _SuiteDef(_suite_loewner_consistency, 1000,
                                     "divided-difference matrices and direct pairs agree on monotonicity"),
    "pick-evaluation": _SuiteDef(_suite_pick_evaluation, 200,
                                 "integral-representation evaluation: half-plane margin, spectral agreement"),
    "serialization-roundtrip": _SuiteDef(_suite_serialization_roundtrip, 300,
                                         "matrix files round-trip bit-exactly; malformed inputs are rejected"),
    "report-determinism": _SuiteDef(_suite_report_determinism, 4,
                                    "replayed suite runs serialize identically apart from timing"),
}


def suite_names() -> List[str]:
    return list(SUITES)


def suite_description(name: str) -> str:
    if name not in SUITES:
        raise MalformedInputError(f"unknown suite '{name}'; known: {', '.join(SUITES)}")
    return SUITES[name].description


def run_suite(name: str, seed: int = 0, trials: Optional[int] = None,
              tol: ToleranceConfig = DEFAULT_TOL) -> RunReport:
    """Run one named suite deterministically and return its report."""
    if name not in SUITES:
        raise MalformedInputError(f"unknown suite '{name}'; known: {', '.join(SUITES)}")
    spec = SUITES[name]
    n_trials = spec.default_trials if trials is None else int(trials)
    if n_trials < 1:
        raise MalformedInputError("trials must be positive")
    rng = np.random.default_rng(seed)
    rec = _Recorder()
    start = time.perf_counter()
    details = spec.fn(rng, n_trials, tol, rec) or {}
    elapsed = time.perf_counter() - start
    details["failure_count"] = rec.failure_count
    return RunReport(
        suite=name,
        seed=int(seed),
        trials=n_trials,
        failures=rec.failures,
        max_residual=rec.max_residual,
        details=details,
        elapsed_seconds=elapsed,
    )


def run_all(seed: int = 0, trials: Optional[int] = None,
            tol: ToleranceConfig = DEFAULT_TOL) -> List[RunReport]:
    return [run_suite(name, seed=seed, trials=trials, tol=tol) for name in SUITES]
