"""Classifying corner-anchored domains and their canonical maps.

Hermitian matrices whose leading m x m corner has inertia (p, 0, m - p) form
a domain U(m, p). Each carries a canonical map that inverts the corner and
reshuffles the coupling; it lands in U(m, m - p), and applying the dual map
brings you back. A bordered embedding of dimension 2n - m linearizes the map
as a negated inverse, and the census of classes for size n is
(n + 1)(n + 2) / 2.

Run: python3 demos/04_block_classes.py
"""

import numpy as np

from matorder.classify import (
    BlockMapSpec,
    block_map_apply,
    bordered_arrangement,
    bordered_embedding,
    class_count,
    enumerate_signatures,
    growth_direction,
    in_block_domain,
    signature_class,
)
from matorder.linalg import herm_part, inertia, opnorm
from matorder.sampling import random_hermitian

rng = np.random.default_rng(31)

print("class census:", {n: class_count(n) for n in range(2, 7)})
print("signature representatives at n=2:", len(enumerate_signatures(2)))

# build a member of U(2, 1) in dimension 4
n, m, p = 4, 2, 1
spec = BlockMapSpec(n, m, p)
X = random_hermitian(rng, n)
U = np.linalg.qr(rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m)))[0]
X[:m, :m] = herm_part(U @ np.diag([1.3, -0.8]).astype(complex) @ U.conj().T)
X = herm_part(X)
assert in_block_domain(spec, X)

cls = signature_class(X[:m, :m])
print(f"\ncorner class: m={m}, inertia ({cls.p}, 0, {cls.m - cls.p})")

Y = block_map_apply(spec, X)
print("image corner inertia:", tuple(inertia(Y[:m, :m])), "(flipped to (m-p, p))")

back = block_map_apply(spec.dual, Y)
print("involution error:", f"{opnorm(back - X):.2e}")

# the bordered embedding turns the block map into a negated inverse
E = bordered_embedding(m, X)
R = bordered_arrangement(m, Y)
k = 2 * n - m
print(f"\nbordered embedding size: {k} x {k}")
print("embedding inertia:", tuple(inertia(E)),
      f"(expected ({n + p - m}, 0, {n - p}))")
print("E @ R + I error:", f"{opnorm(E @ R + np.eye(k)):.2e}")

# stable growth directions separate the classes by their extremal ranks
D_pos = growth_direction(spec, X, positive=True)
D_neg = growth_direction(spec, X, positive=False)
print("\nmax PSD stay-direction rank:", np.linalg.matrix_rank(D_pos, tol=1e-8),
      f"(n + p - m = {n + p - m})")
print("max NSD stay-direction rank:", np.linalg.matrix_rank(D_neg, tol=1e-8),
      f"(n - p = {n - p})")
for t in (1.0, 100.0, 1e4):
    assert in_block_domain(spec, herm_part(X + t * D_pos))
print("X + t * D stays in the class for t up to 1e4: verified")
