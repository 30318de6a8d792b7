"""Fixed-order monotonicity: divided-difference matrices, verdicts, representations."""

import math

import numpy as np
import pytest

from matorder.errors import DomainViolationError, MalformedInputError
from matorder.linalg import herm_part, loewner_compare, opnorm, spectral_apply
from matorder.monotone import (
    PickRepresentation,
    ScalarFunction,
    builtin_function,
    divided_difference,
    is_matrix_monotone,
    loewner_matrix,
    pick_eval,
    sample_window,
)
from matorder.sampling import random_half_plane, random_hermitian_with_spectrum


def test_divided_difference_closed_forms():
    # oracle: (x^2 - y^2)/(x - y) = x + y, and the derivative on the diagonal
    square = builtin_function("square")
    assert divided_difference(square, 2.0, 5.0) == pytest.approx(7.0)
    assert divided_difference(square, 3.0, 3.0) == pytest.approx(6.0)
    sqrt = builtin_function("sqrt")
    assert divided_difference(sqrt, 1.0, 4.0) == pytest.approx(1.0 / 3.0)
    assert divided_difference(sqrt, 4.0, 4.0) == pytest.approx(0.25)


def test_loewner_matrix_square_entrywise():
    # oracle: for f = x^2 the divided-difference matrix is x_i + x_j
    square = builtin_function("square")
    nodes = [0.5, 1.5, 4.0]
    rep = loewner_matrix(square, nodes)
    want = np.add.outer(nodes, nodes).astype(float)
    assert np.max(np.abs(rep.matrix - want)) <= 1e-12
    # x_i + x_j on positive nodes is rank <= 2 with a negative eigenvalue
    assert rep.min_eigenvalue < 0.0


def test_loewner_matrix_sqrt_is_psd():
    # oracle: 1/(sqrt(x_i) + sqrt(x_j)) is a Cauchy-like PSD kernel
    sqrt = builtin_function("sqrt")
    nodes = [0.3, 1.0, 2.7, 6.1]
    rep = loewner_matrix(sqrt, nodes)
    want = 1.0 / np.add.outer(np.sqrt(nodes), np.sqrt(nodes))
    assert np.max(np.abs(rep.matrix - want)) <= 1e-12
    assert rep.min_eigenvalue >= -1e-12


def test_is_matrix_monotone_accepts_sqrt_and_log():
    for name in ("sqrt", "log"):
        rep = is_matrix_monotone(builtin_function(name), 4, trials=200, seed=3)
        assert rep.passed and rep.conclusive
        assert rep.min_loewner_eigenvalue >= -1e-10


def test_is_matrix_monotone_refutes_square_with_witness():
    rep = is_matrix_monotone(builtin_function("square"), 2, trials=300, seed=4)
    assert not rep.passed and rep.conclusive
    assert rep.witness_nodes is not None or rep.witness_pair is not None
    if rep.witness_pair is not None:
        X, Y = rep.witness_pair
        # oracle: verify the witness with direct eigenvalue checks
        assert loewner_compare(X, Y).leq
        gap = float(np.linalg.eigvalsh(herm_part(Y @ Y - X @ X))[0])
        assert gap < 0.0
    if rep.witness_nodes is not None:
        lm = loewner_matrix(builtin_function("square"), rep.witness_nodes)
        assert lm.min_eigenvalue < 0.0


def test_fp_family_is_monotone_on_unit_interval():
    for p in (0.25, 0.5, 0.75):
        rep = is_matrix_monotone(builtin_function(f"fp:{p}"), 3, trials=150, seed=5)
        assert rep.passed, p


def test_rational_family_is_monotone():
    rep = is_matrix_monotone(builtin_function("rational:0.5"), 3, trials=150, seed=6)
    assert rep.passed


def test_builtin_function_validates_parameters():
    with pytest.raises(MalformedInputError):
        builtin_function("fp:1.5")
    with pytest.raises(MalformedInputError):
        builtin_function("rational:0")
    with pytest.raises(MalformedInputError):
        builtin_function("rational:1.0")


def test_tabulated_function_is_not_conclusive(tmp_path):
    xs = np.linspace(0.1, 4.0, 60)
    table = tmp_path / "samples.csv"
    table.write_text("\n".join(f"{x},{math.sqrt(x)}" for x in xs))
    f = builtin_function(f"table:{table}")
    assert f.approximate
    rep = is_matrix_monotone(f, 2, trials=60, seed=7)
    assert rep.passed
    assert not rep.conclusive


def test_sample_window_stays_inside_domain():
    lo, hi = sample_window((0.0, math.inf))
    assert 0.0 < lo < hi < math.inf
    lo2, hi2 = sample_window((-1.0, 1.0))
    assert -1.0 < lo2 < hi2 < 1.0


def test_pick_eval_scalar_closed_form():
    # oracle: c + d x + sum w (1 + x y)/(y - x), evaluated by hand
    rep = PickRepresentation(c=0.7, d=0.3, atoms=((3.0, 0.5), (-2.0, 1.0)), interval=(-1.0, 2.0))
    x = 0.4
    want = 0.7 + 0.3 * x
    for y, w in ((3.0, 0.5), (-2.0, 1.0)):
        want += w * (1.0 + x * y) / (y - x)
    assert pick_eval(rep, x) == pytest.approx(want, rel=1e-12)


def test_pick_eval_atom_at_zero_is_negated_inverse():
    rep = PickRepresentation(c=0.0, d=0.0, atoms=((0.0, 1.0),), interval=(0.4, 2.5))
    rng = np.random.default_rng(60)
    for _ in range(10):
        X = random_hermitian_with_spectrum(rng, 3, 0.5, 2.4)
        got = pick_eval(rep, X)
        assert opnorm(got + np.linalg.inv(X)) <= 1e-10 * (1.0 + opnorm(X))


def test_pick_eval_matrix_matches_spectral_route():
    rep = PickRepresentation(c=0.2, d=0.8, atoms=((4.0, 0.7),), interval=(-1.0, 2.0))
    f = rep.scalar_function()
    rng = np.random.default_rng(61)
    for _ in range(10):
        X = random_hermitian_with_spectrum(rng, 3, -0.8, 1.8)
        direct = pick_eval(rep, X)
        via = spectral_apply(X, f, domain=f.domain)
        assert opnorm(direct - via) <= 1e-9 * (1.0 + opnorm(direct))


def test_pick_eval_maps_half_plane_to_half_plane():
    rep = PickRepresentation(c=0.0, d=0.5, atoms=((3.0, 1.0),), interval=(-1.0, 2.0))
    rng = np.random.default_rng(62)
    for _ in range(10):
        Z = random_half_plane(rng, 3)
        W = pick_eval(rep, Z)
        lam = float(np.linalg.eigvalsh(herm_part((W - W.conj().T) / 2j))[0])
        assert lam > 0.0


def test_pick_eval_guards_scalar_domain():
    rep = PickRepresentation(c=0.0, d=1.0, atoms=(), interval=(0.0, 1.0))
    with pytest.raises(DomainViolationError):
        pick_eval(rep, 5.0)


def test_scalar_function_window_respects_poles():
    f = builtin_function("rational:-2.0")
    # pole at 1 - 1/r = 1.5; the domain must stay on the side containing 0
    lo, hi = f.domain
    assert lo < 0.0 < hi <= 1.5
