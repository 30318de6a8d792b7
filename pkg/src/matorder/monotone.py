"""Desk-scale matrix monotonicity: divided differences, Loewner matrices,
fixed-order verdicts with witnesses, and discrete Pick-form evaluation.

A real function is matrix monotone of order n on its interval exactly when
every n-point Loewner matrix of first divided differences is PSD. The
tester here runs that criterion over random node tuples and cross-checks it
against direct functional-calculus pair comparisons; failures come with a
concrete witness. Discrete Pick representations c + dx + sum of atom terms
are evaluated on scalars, Hermitian matrices, and half-plane points.
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DomainViolationError, MalformedInputError
from .halfplane import in_half_plane
from .linalg import (
    as_hermitian,
    as_square,
    herm_part,
    hermitian_eigen,
    is_invertible,
    loewner_compare,
    opnorm,
    spectral_apply,
)
from .sampling import random_hermitian_with_spectrum, random_psd

__all__ = [
    "ScalarFunction",
    "PickRepresentation",
    "LoewnerMatrixReport",
    "MonotoneReport",
    "builtin_function",
    "divided_difference",
    "loewner_matrix",
    "is_matrix_monotone",
    "pick_eval",
    "sample_window",
]

# Unbounded interval ends are truncated to a window of this width for sampling.
UNBOUNDED_WINDOW = 10.0


@dataclasses.dataclass(frozen=True)
class ScalarFunction:
    """A real function on an open interval, with an optional derivative.

    When no derivative is supplied, a central finite difference with step
    1e-5 stands in. `approximate` marks interpolated (tabulated) functions
    whose monotonicity verdicts are not conclusive.
    """

    value: Callable[[float], float]
    domain: Tuple[float, float]
    derivative: Optional[Callable[[float], float]] = None
    name: str = "anonymous"
    approximate: bool = False

    def __post_init__(self) -> None:
        a, b = self.domain
        if not a < b:
            raise MalformedInputError("domain must be a nonempty open interval (a, b)")

    def __call__(self, x: float) -> float:
        a, b = self.domain
        if not a < x < b:
            raise DomainViolationError(f"{x} is outside the domain ({a}, {b}) of {self.name}")
        return float(self.value(x))

    def slope(self, x: float) -> float:
        if self.derivative is not None:
            return float(self.derivative(x))
        h = 1e-5
        return (self(x + h) - self(x - h)) / (2.0 * h)


def sample_window(domain: Tuple[float, float]) -> Tuple[float, float]:
    """Compact sampling window inside an open interval.

    Finite ends are pulled in by 1e-3 of the length; unbounded ends are
    truncated to a window of width UNBOUNDED_WINDOW.
    """
    a, b = domain
    if math.isinf(a) and math.isinf(b):
        return -UNBOUNDED_WINDOW / 2.0, UNBOUNDED_WINDOW / 2.0
    if math.isinf(b):
        return a + 1e-3 * UNBOUNDED_WINDOW, a + UNBOUNDED_WINDOW
    if math.isinf(a):
        return b - UNBOUNDED_WINDOW, b - 1e-3 * UNBOUNDED_WINDOW
    delta = 1e-3 * (b - a)
    return a + delta, b - delta


def divided_difference(f: ScalarFunction, x: float, y: float) -> float:
    """First divided difference, switching to the derivative near the diagonal."""
    switch = 1e-6 * (1.0 + abs(x))
    if abs(y - x) > switch:
        return (f(y) - f(x)) / (y - x)
    return f.slope((x + y) / 2.0)


@dataclasses.dataclass(frozen=True)
class LoewnerMatrixReport:
    nodes: Tuple[float, ...]
    matrix: np.ndarray
    min_eigenvalue: float


def loewner_matrix(f: ScalarFunction, nodes: Sequence[float]) -> LoewnerMatrixReport:
    """Symmetric matrix of first divided differences over ascending nodes."""
    pts = [float(t) for t in nodes]
    if any(y <= x for x, y in zip(pts, pts[1:])):
        raise MalformedInputError("nodes must be strictly increasing")
    k = len(pts)
    L = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            L[i, j] = L[j, i] = divided_difference(f, pts[i], pts[j])
    lowest = float(np.linalg.eigvalsh(L)[0]) if k else 0.0
    return LoewnerMatrixReport(tuple(pts), L, lowest)


@dataclasses.dataclass(frozen=True)
class MonotoneReport:
    """Verdict of the fixed-order monotonicity test, with witness on failure."""

    function: str
    order: int
    passed: bool
    conclusive: bool
    node_trials: int
    pair_trials: int
    min_loewner_eigenvalue: float
    witness_nodes: Optional[Tuple[float, ...]]
    witness_pair: Optional[Tuple[np.ndarray, np.ndarray]]
    seed: int


def _draw_nodes(rng: np.random.Generator, order: int, lo: float, hi: float) -> np.ndarray:
    for _ in range(100):
        pts = np.sort(rng.uniform(lo, hi, size=order))
        if order < 2 or float(np.min(np.diff(pts))) > 0.0:
            return pts
    raise RuntimeError("failed to draw distinct nodes")


def _draw_pair(rng: np.random.Generator, order: int, lo: float, hi: float) -> Tuple[np.ndarray, np.ndarray]:
    X = random_hermitian_with_spectrum(rng, order, lo, hi)
    top = float(hermitian_eigen(X).values[-1])
    room = max(hi - top, 0.0)
    D = random_psd(rng, order)
    norm = opnorm(D)
    if norm > 0.0:
        D = D * (0.9 * room * rng.uniform(0.1, 1.0) / max(norm, 1e-12))
    return X, herm_part(X + D)


def is_matrix_monotone(
    f: ScalarFunction,
    order: int,
    trials: int = 500,
    seed: int = 0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> MonotoneReport:
    """Two-phase test: Loewner matrices over random node tuples, then direct
    functional-calculus pair checks. PASS requires both phases clean."""
    if order < 1:
        raise MalformedInputError("order must be >= 1")
    rng = np.random.default_rng(seed)
    lo, hi = sample_window(f.domain)
    worst = np.inf
    pair_trials = max(trials // 2, 1)

    for _ in range(trials):
        report = loewner_matrix(f, _draw_nodes(rng, order, lo, hi))
        scale = 1.0 + opnorm(report.matrix)
        worst = min(worst, report.min_eigenvalue)
        if report.min_eigenvalue < -1e-10 * scale:
            return MonotoneReport(f.name, order, False, not f.approximate, trials, 0,
                                  float(worst), report.nodes, None, seed)

    for _ in range(pair_trials):
        X, Y = _draw_pair(rng, order, lo, hi)
        fX = spectral_apply(X, f, domain=f.domain, tol=tol)
        fY = spectral_apply(Y, f, domain=f.domain, tol=tol)
        if not loewner_compare(fX, fY, tol).leq:
            return MonotoneReport(f.name, order, False, not f.approximate, trials, pair_trials,
                                  float(worst), None, (X, Y), seed)

    return MonotoneReport(f.name, order, True, not f.approximate, trials, pair_trials,
                          float(worst), None, None, seed)


@dataclasses.dataclass(frozen=True)
class PickRepresentation:
    """Discrete representation c + dx + sum_j w_j (1 + x y_j)/(y_j - x).

    Every function of this shape with d >= 0, weights w_j > 0, and poles
    y_j outside the interval is matrix monotone of every order there.
    """

    c: float
    d: float
    atoms: Tuple[Tuple[float, float], ...]
    interval: Tuple[float, float]

    def __post_init__(self) -> None:
        a, b = self.interval
        if not a < b:
            raise MalformedInputError("interval must be nonempty")
        if self.d < 0.0:
            raise MalformedInputError("linear coefficient d must be >= 0")
        atoms = tuple((float(y), float(w)) for y, w in self.atoms)
        for y, w in atoms:
            if w <= 0.0:
                raise MalformedInputError("atom weights must be positive")
            if a < y < b:
                raise MalformedInputError(f"atom location {y} lies inside the interval")
        object.__setattr__(self, "atoms", atoms)

    def scalar_function(self) -> ScalarFunction:
        def value(x: float) -> float:
            out = self.c + self.d * x
            for y, w in self.atoms:
                out += w * (1.0 + x * y) / (y - x)
            return out

        def derivative(x: float) -> float:
            out = self.d
            for y, w in self.atoms:
                out += w * (1.0 + y * y) / (y - x) ** 2
            return out

        return ScalarFunction(value, self.interval, derivative, name="pick")


def _pick_matrix(rep: PickRepresentation, X: np.ndarray, tol: ToleranceConfig) -> np.ndarray:
    n = X.shape[0]
    eye = np.eye(n)
    out = rep.c * eye + rep.d * X.astype(complex)
    for y, w in rep.atoms:
        M = y * eye - X
        if not is_invertible(M, tol):
            raise DomainViolationError(f"argument spectrum touches the atom at {y}")
        out = out + w * ((y * y + 1.0) * np.linalg.inv(M) - y * eye)
    return out


def pick_eval(
    rep: PickRepresentation,
    argument: Union[float, Iterable],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> Union[float, np.ndarray]:
    """Evaluate on a scalar, a Hermitian matrix, or a half-plane point.

    Hermitian arguments must have spectrum inside the interval; half-plane
    arguments need no interval guard (real atoms cannot collide with a
    matrix whose imaginary part is definite) and, when d > 0 or atoms are
    present, the value lands back in the half-plane.
    """
    a, b = rep.interval
    if np.isscalar(argument):
        x = float(np.real(argument))
        if not a < x < b:
            raise DomainViolationError(f"scalar argument {x} outside ({a}, {b})")
        return rep.scalar_function()(x)
    Z = as_square(argument, "argument")
    herm_gap = float(np.linalg.norm(Z - Z.conj().T))
    if herm_gap <= tol.herm_tol * (1.0 + float(np.linalg.norm(Z))):
        H = as_hermitian(Z, tol, "argument")
        values = hermitian_eigen(H, tol).values
        if values.size and not (a < float(values[0]) and float(values[-1]) < b):
            raise DomainViolationError("matrix spectrum outside the interval")
        return herm_part(_pick_matrix(rep, H, tol))
    if in_half_plane(Z, tol):
        return _pick_matrix(rep, Z, tol)
    raise DomainViolationError("argument must be scalar, Hermitian, or a half-plane point")


def _tabulated(path: str) -> ScalarFunction:
    """Monotone cubic interpolation of tabulated samples, flagged approximate."""
    from scipy.interpolate import PchipInterpolator

    text = Path(path).read_text()
    try:
        payload = json.loads(text)
        xs = np.asarray(payload["x"], dtype=float)
        ys = np.asarray(payload["y"], dtype=float)
    except json.JSONDecodeError:
        rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
        data = np.asarray([[float(c) for c in row] for row in rows])
        xs, ys = data[:, 0], data[:, 1]
    if xs.size < 2 or np.any(np.diff(xs) <= 0):
        raise MalformedInputError("table needs at least two strictly increasing x values")
    spline = PchipInterpolator(xs, ys)
    dspline = spline.derivative()
    return ScalarFunction(
        lambda t: float(spline(t)),
        (float(xs[0]), float(xs[-1])),
        lambda t: float(dspline(t)),
        name=f"table:{path}",
        approximate=True,
    )


def builtin_function(name: str) -> ScalarFunction:
    """Named scalar functions for the CLI and the suites.

    sqrt, log, square, fp:<p> (weight p in (0,1), domain (0,1)), and
    rational:<r> (x/(rx+1-r) for r < 1, on the pole-free side containing 0);
    table:<path> loads tabulated samples.
    """
    if name == "sqrt":
        return ScalarFunction(math.sqrt, (0.0, math.inf), lambda x: 0.5 / math.sqrt(x), name="sqrt")
    if name == "log":
        return ScalarFunction(math.log, (0.0, math.inf), lambda x: 1.0 / x, name="log")
    if name == "square":
        return ScalarFunction(lambda x: x * x, (0.0, math.inf), lambda x: 2.0 * x, name="square")
    if name.startswith("fp:"):
        p = float(name.split(":", 1)[1])
        if not 0.0 < p < 1.0:
            raise MalformedInputError("fp parameter must lie in (0, 1)")
        return ScalarFunction(
            lambda x: x / (p * x + 1.0 - p),
            (0.0, 1.0),
            lambda x: (1.0 - p) / (p * x + 1.0 - p) ** 2,
            name=name,
        )
    if name.startswith("rational:"):
        r = float(name.split(":", 1)[1])
        if not (r < 1.0 and r != 0.0):
            raise MalformedInputError("rational parameter must satisfy r < 1, r != 0")
        pole = 1.0 - 1.0 / r
        domain = (pole, math.inf) if r > 0 else (-math.inf, pole)
        return ScalarFunction(
            lambda x: x / (r * x + 1.0 - r),
            domain,
            lambda x: (1.0 - r) / (r * x + 1.0 - r) ** 2,
            name=name,
        )
    if name.startswith("table:"):
        return _tabulated(name.split(":", 1)[1])
    raise MalformedInputError(f"unknown function name: {name!r}")
