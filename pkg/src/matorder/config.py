"""Tolerance configuration.

Every numerical gate in the library threads through a ToleranceConfig so
defaults can be overridden globally (CLI environment variable) or per call.
"""

from __future__ import annotations

import dataclasses

from .errors import MalformedInputError


@dataclasses.dataclass(frozen=True)
class ToleranceConfig:
    """Numerical cushions used by membership tests and validators.

    herm_tol    relative hermiticity cushion ||X - X*||_F <= herm_tol*(1+||X||_F)
    eig_tol     eigendecomposition residual/unitarity bound (relative)
    psd_tol     relative eigenvalue cutoff for order comparisons and rank
    inv_margin  invertibility margin for sigma_min / half-plane membership
    """

    herm_tol: float = 1e-10
    eig_tol: float = 1e-10
    psd_tol: float = 1e-8
    inv_margin: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("herm_tol", "eig_tol", "psd_tol", "inv_margin"):
            value = getattr(self, name)
            if not (value > 0.0):
                raise MalformedInputError(f"{name} must be strictly positive, got {value}")

    def replace(self, **kwargs: float) -> "ToleranceConfig":
        return dataclasses.replace(self, **kwargs)


DEFAULT_TOL = ToleranceConfig()


def parse_tolerance_overrides(text: str, base: ToleranceConfig = DEFAULT_TOL) -> ToleranceConfig:
    """Parse a "key=value,key=value" override list (CLI environment variable).

    Unknown keys raise MalformedInputError; empty text returns `base`.
    """
    text = text.strip()
    if not text:
        return base
    allowed = {"herm_tol", "eig_tol", "psd_tol", "inv_margin"}
    overrides: dict[str, float] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise MalformedInputError(f"unknown tolerance override {item!r}")
        try:
            overrides[key] = float(value)
        except ValueError as exc:
            raise MalformedInputError(f"bad tolerance value in {item!r}") from exc
    return base.replace(**overrides)
