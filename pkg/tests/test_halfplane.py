"""Half-plane geometry: cayley transform, rational family, automorphism fitting."""

import numpy as np
import pytest

from matorder.errors import DomainViolationError, ModelMismatchError
from matorder.halfplane import (
    MobiusAutomorphism,
    apply_mobius,
    cayley,
    fit_canonical,
    imag_part,
    in_half_plane,
    inverse_cayley,
    mobius_fix01,
    mobius_fix01_matrix,
    neg_inverse,
    normalize_phase,
)
from matorder.linalg import herm_part, opnorm
from matorder.sampling import (
    random_contraction,
    random_half_plane,
    random_hermitian,
    random_hermitian_with_spectrum,
    random_invertible,
)


def test_cayley_scalar_closed_form():
    # oracle: i(1+y)/(1-y) for scalar contractions
    for y in (0.0, 0.3, -0.7, 0.2 + 0.4j):
        got = cayley(np.array([[y]]))
        want = 1j * (1 + y) / (1 - y)
        assert abs(got[0, 0] - want) <= 1e-12


def test_cayley_lands_in_half_plane_and_inverts():
    rng = np.random.default_rng(20)
    for _ in range(40):
        Y = random_contraction(rng, 3)
        Z = cayley(Y)
        assert in_half_plane(Z).inside
        back = inverse_cayley(Z)
        assert opnorm(back - Y) <= 1e-10 * (1.0 + opnorm(Y))


def test_inverse_cayley_then_cayley_round_trip():
    rng = np.random.default_rng(21)
    for _ in range(40):
        Z = random_half_plane(rng, 3)
        W = inverse_cayley(Z)
        assert opnorm(W) < 1.0 + 1e-10
        assert opnorm(cayley(W) - Z) <= 1e-10 * (1.0 + opnorm(Z))


def test_cayley_rejects_half_plane_input():
    Z = 2j * np.eye(2)
    with pytest.raises(DomainViolationError):
        cayley(Z)


def test_neg_inverse_is_an_involution_preserving_half_plane():
    rng = np.random.default_rng(22)
    for _ in range(40):
        Z = random_half_plane(rng, 3)
        W = neg_inverse(Z)
        assert in_half_plane(W).inside
        assert opnorm(neg_inverse(W) - Z) <= 1e-10 * (1.0 + opnorm(Z))


def test_imag_part_sign():
    Z = np.array([[1.0 + 2.0j, 0.0], [0.0, 3.0 - 0.5j]])
    lam = np.linalg.eigvalsh(imag_part(Z))
    assert lam[0] == pytest.approx(-0.5)
    assert lam[-1] == pytest.approx(2.0)


def test_mobius_fix01_fixes_endpoints_and_inverts():
    # oracle: the inverse parameter is r/(r-1); both forms fix 0 and 1
    for r in (-2.0, -0.5, 0.3, 0.9):
        assert mobius_fix01(r, 0.0) == pytest.approx(0.0)
        assert mobius_fix01(r, 1.0) == pytest.approx(1.0)
        s = r / (r - 1.0)
        for x in np.linspace(-0.2, 1.1, 14):
            y = mobius_fix01(r, float(x))
            assert mobius_fix01(s, y) == pytest.approx(float(x), abs=1e-9)


def test_mobius_fix01_matrix_matches_scalar_on_diagonals():
    for r, (lo, hi) in [(-2.0, (-0.4, 1.2)), (0.3, (-1.5, 2.5))]:
        x = np.linspace(lo + 0.05, hi - 0.05, 4)
        X = np.diag(x).astype(complex)
        got = mobius_fix01_matrix(r, X)
        want = np.diag([mobius_fix01(r, float(v)) for v in x])
        assert opnorm(got - want) <= 1e-10


def test_mobius_fix01_matrix_inverse_parameter():
    rng = np.random.default_rng(23)
    for r, (lo, hi) in [(-2.0, (-0.4, 1.2)), (-0.5, (-1.5, 2.0)),
                        (0.3, (-1.5, 2.5)), (0.9, (0.05, 2.0))]:
        s = r / (r - 1.0)
        for _ in range(10):
            X = random_hermitian_with_spectrum(rng, 3, lo + 0.05, hi - 0.05)
            Y = mobius_fix01_matrix(r, X)
            back = mobius_fix01_matrix(s, Y)
            assert opnorm(back - X) <= 1e-9 * (1.0 + opnorm(X))


def _random_mobius(rng, n):
    return MobiusAutomorphism(
        frame=random_invertible(rng, n),
        A=random_hermitian(rng, n) * 0.5,
        B=random_hermitian(rng, n) * 0.5,
        C=random_hermitian(rng, n) * 0.5,
        transpose=bool(rng.random() < 0.5),
    )


def test_apply_mobius_stays_in_half_plane():
    rng = np.random.default_rng(24)
    for _ in range(30):
        m = _random_mobius(rng, 3)
        Z = random_half_plane(rng, 3)
        W = apply_mobius(m, Z)
        assert in_half_plane(W).inside


def test_apply_mobius_matches_manual_steps():
    # oracle: compose the translate / invert / congruence steps by hand
    rng = np.random.default_rng(25)
    m = _random_mobius(rng, 3)
    Z = random_half_plane(rng, 3)
    Zp = Z.T if m.transpose else Z
    inner = np.linalg.inv(np.linalg.inv(Zp - m.B) + m.A)
    want = m.frame @ inner @ m.frame.conj().T + m.C
    assert opnorm(apply_mobius(m, Z) - want) <= 1e-10 * (1.0 + opnorm(want))


def test_normalize_phase_pins_first_entry():
    T = np.exp(1j * 0.7) * np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex)
    N = normalize_phase(T)
    assert abs(np.angle(N.flat[np.flatnonzero(np.abs(N) > 1e-12)[0]])) <= 1e-12


def test_fit_canonical_recovers_planted_map():
    rng = np.random.default_rng(26)
    for transpose in (False, True):
        m = MobiusAutomorphism(
            frame=random_invertible(rng, 2),
            A=random_hermitian(rng, 2) * 0.4,
            B=np.zeros((2, 2)),
            C=np.zeros((2, 2)),
            transpose=transpose,
        )
        fit = fit_canonical(lambda Z: apply_mobius(m, Z), 2)
        for _ in range(10):
            Z = random_half_plane(rng, 2)
            assert opnorm(apply_mobius(fit, Z) - apply_mobius(m, Z)) <= 1e-7 * (1.0 + opnorm(Z))


def test_fit_canonical_flags_non_model_maps():
    rng = np.random.default_rng(27)
    crooked = lambda Z: Z + 0.05 * (Z @ Z)
    with pytest.raises(ModelMismatchError):
        fit_canonical(crooked, 2)
