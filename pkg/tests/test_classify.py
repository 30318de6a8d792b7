"""Block maps, bordered embeddings, class census, and effect automorphisms."""

import numpy as np
import pytest

from matorder.classify import (
    BlockMapSpec,
    EffectAutoSpec,
    EffectEmbeddingSpec,
    FpqSpec,
    are_equivalent,
    as_effect,
    block_map_apply,
    bordered_arrangement,
    bordered_embedding,
    class_count,
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
from matorder.errors import DomainViolationError, MalformedInputError
from matorder.linalg import herm_part, inertia, loewner_compare, opnorm
from matorder.sampling import random_contraction, random_effect, random_hermitian, random_psd


def _domain_sample(rng, spec):
    # build the corner with the prescribed inertia directly; random
    # Hermitians almost never land in the definite-corner classes
    n, m, p = spec.n, spec.m, spec.p
    X = random_hermitian(rng, n)
    if m:
        G = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        U = np.linalg.qr(G)[0]
        vals = np.concatenate([rng.uniform(0.3, 2.0, size=p),
                               -rng.uniform(0.3, 2.0, size=m - p)])
        X[:m, :m] = herm_part(U @ np.diag(vals).astype(complex) @ U.conj().T)
    X = herm_part(X)
    assert in_block_domain(spec, X)
    return X


def test_signature_class_reads_diagonal():
    A = np.diag([2.0, 1.0, -3.0, 0.0]).astype(complex)
    cls = signature_class(A)
    assert (cls.m, cls.p) == (3, 2)
    assert not cls.borderline


def test_class_count_matches_enumeration():
    # oracle: count pairs (m, p) with 0 <= p <= m <= n by brute force
    for n in range(2, 9):
        brute = len([(m, p) for m in range(n + 1) for p in range(m + 1)])
        assert class_count(n) == brute
        assert class_count(n) == (n + 1) * (n + 2) // 2
        assert len(enumerate_signatures(n)) == class_count(n)


def test_enumerated_signatures_are_pairwise_inequivalent():
    for n in (2, 3):
        sigs = enumerate_signatures(n)
        for i, A in enumerate(sigs):
            for j, B in enumerate(sigs):
                assert are_equivalent(A, B) == (i == j)


def test_block_map_worked_2x2_example():
    # hand computation: n=2, m=1, p=1, X = [[2, 1], [1, 3]].
    # corner inverse -1/2 in the corner, Schur complement stays, coupling
    # scales by the corner inverse and picks up the sign split
    X = np.array([[2.0, 1.0], [1.0, 3.0]], dtype=complex)
    want = np.array([[-0.5, 0.5j], [-0.5j, 2.5]], dtype=complex)
    got = block_map_apply(BlockMapSpec(2, 1, 1), X)
    assert opnorm(got - want) <= 1e-12


def test_block_map_involution_all_classes():
    rng = np.random.default_rng(50)
    for n in range(2, 5):
        for m in range(n + 1):
            for p in range(m + 1):
                spec = BlockMapSpec(n, m, p)
                X = _domain_sample(rng, spec)
                Y = block_map_apply(spec, X)
                assert in_block_domain(spec.dual, Y)
                back = block_map_apply(spec.dual, Y)
                assert opnorm(back - X) <= 1e-9 * (1.0 + opnorm(X))


def test_block_map_corner_inertia_flips():
    rng = np.random.default_rng(51)
    spec = BlockMapSpec(4, 3, 1)
    X = _domain_sample(rng, spec)
    Y = block_map_apply(spec, X)
    sig = inertia(Y[:3, :3])
    assert (sig.n_pos, sig.n_zero, sig.n_neg) == (2, 0, 1)


def test_block_map_rejects_wrong_corner():
    spec = BlockMapSpec(2, 1, 1)
    X = np.diag([-1.0, 0.5]).astype(complex)  # corner negative, not in U(1,1)
    assert not in_block_domain(spec, X)
    with pytest.raises(DomainViolationError):
        block_map_apply(spec, X)


def test_bordered_embedding_identity_and_inertia():
    # oracle: multiply the embedding by the arranged image and compare to -I
    rng = np.random.default_rng(52)
    for (n, m, p) in [(2, 1, 1), (3, 2, 1), (4, 3, 2), (5, 3, 0)]:
        spec = BlockMapSpec(n, m, p)
        X = _domain_sample(rng, spec)
        E = bordered_embedding(m, X)
        k = 2 * n - m
        assert E.shape == (k, k)
        sig = inertia(E)
        assert (sig.n_pos, sig.n_zero, sig.n_neg) == (n + p - m, 0, n - p)
        R = bordered_arrangement(m, block_map_apply(spec, X))
        assert opnorm(E @ R + np.eye(k)) <= 1e-9 * (1.0 + opnorm(E) * opnorm(R))


def test_growth_directions_have_extremal_ranks():
    rng = np.random.default_rng(53)
    spec = BlockMapSpec(3, 2, 1)
    X = _domain_sample(rng, spec)
    D_pos = growth_direction(spec, X, positive=True)   # PSD
    D_neg = growth_direction(spec, X, positive=False)  # NSD
    sig_pos, sig_neg = inertia(D_pos), inertia(D_neg)
    assert (sig_pos.n_pos, sig_pos.n_neg) == (spec.n + spec.p - spec.m, 0)
    assert (sig_neg.n_pos, sig_neg.n_neg) == (0, spec.n - spec.p)
    # staying directions: adding them never changes the corner inertia
    for t in (0.5, 10.0, 1e4):
        assert in_block_domain(spec, herm_part(X + t * D_pos))
        assert in_block_domain(spec, herm_part(X + t * D_neg))


def test_effect_automorphism_identity_frame_is_identity():
    rng = np.random.default_rng(54)
    spec = EffectAutoSpec(frame=np.eye(3))
    for _ in range(10):
        X = random_effect(rng, 3)
        assert opnorm(effect_automorphism(spec, X) - X) <= 1e-12


def test_effect_automorphism_fixes_endpoints_and_group_law():
    rng = np.random.default_rng(55)
    for _ in range(15):
        T = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) + 3 * np.eye(3)
        S = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) + 3 * np.eye(3)
        phi_T = EffectAutoSpec(frame=T)
        phi_S = EffectAutoSpec(frame=S)
        phi_ST = EffectAutoSpec(frame=S @ T)
        Z = np.zeros((3, 3))
        assert opnorm(effect_automorphism(phi_T, Z)) <= 1e-10
        assert opnorm(effect_automorphism(phi_T, np.eye(3)) - np.eye(3)) <= 1e-10
        X = random_effect(rng, 3)
        # group law: applying T then S equals applying ST
        lhs = effect_automorphism(phi_S, effect_automorphism(phi_T, X))
        rhs = effect_automorphism(phi_ST, X)
        assert opnorm(lhs - rhs) <= 1e-9 * (1.0 + opnorm(rhs))


def test_effect_automorphism_stays_in_interval_and_preserves_order():
    rng = np.random.default_rng(56)
    for _ in range(20):
        T = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) + 3 * np.eye(3)
        spec = EffectAutoSpec(frame=T)
        X = random_effect(rng, 3)
        Y = herm_part(X + 0.5 * (np.eye(3) - X))  # X <= Y inside [0, I]
        FX, FY = effect_automorphism(spec, X), effect_automorphism(spec, Y)
        lam = np.linalg.eigvalsh(FX)
        assert lam[0] >= -1e-8 and lam[-1] <= 1.0 + 1e-8
        assert loewner_compare(FX, FY).leq


def test_rational_effect_four_factor_route_agrees():
    # oracle: the composition of the four published factors, built from
    # independent spectral scalings, must equal the direct resolvent form
    rng = np.random.default_rng(57)
    for _ in range(15):
        T = random_contraction(rng, 3)
        spec = FpqSpec(p=float(rng.uniform(0.1, 0.9)), q=-float(rng.uniform(0.1, 2.0)), frame=T)
        X = random_effect(rng, 3)
        direct = rational_effect_automorphism(spec, X)
        f1, f2, f3, f4 = rational_effect_factors(spec)
        chained = f4(f3(f2(f1(X))))
        assert opnorm(chained - direct) <= 1e-9 * (1.0 + opnorm(direct))
        lam = np.linalg.eigvalsh(direct)
        assert lam[0] >= -1e-8 and lam[-1] <= 1.0 + 1e-8


def test_fpq_spec_validates_parameters():
    with pytest.raises(MalformedInputError):
        FpqSpec(p=1.5, q=-1.0, frame=np.eye(2))
    with pytest.raises(MalformedInputError):
        FpqSpec(p=0.5, q=0.3, frame=np.eye(2))
    with pytest.raises(MalformedInputError):
        FpqSpec(p=0.5, q=-1.0, frame=2.0 * np.eye(2))


def test_as_effect_accepts_and_rejects():
    assert as_effect(0.5 * np.eye(2)) is not None
    with pytest.raises(DomainViolationError):
        as_effect(1.5 * np.eye(2))


def test_effect_embedding_fixture_flags():
    fixture = EffectEmbeddingSpec(
        frame=np.eye(2), base=np.zeros((2, 2)), offset=np.zeros((2, 2)),
        value_at_one=2.0 * np.eye(2),
    )
    flags = endpoint_continuity(fixture)
    assert flags == {"zero": True, "one": False}
    rng = np.random.default_rng(58)
    # order is still preserved through the overridden endpoint map
    X = random_effect(rng, 2) * 0.5
    Y = herm_part(X + 0.2 * (np.eye(2) - X))
    FX = effect_embedding_map(fixture, X)
    FY = effect_embedding_map(fixture, Y)
    assert loewner_compare(FX, FY).leq
