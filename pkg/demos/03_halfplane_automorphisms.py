"""Automorphisms of the matrix upper half-plane.

The half-plane consists of complex matrices whose imaginary part is positive
definite. The cayley transform maps the open unit ball of contractions onto
it, Z -> -Z^{-1} is an automorphism, and the four-parameter family
Z -> T((Z' - B)^{-1} + A)^{-1} T* + C covers compositions: composing two
members and refitting recovers a member of the same family.

Run: python3 demos/03_halfplane_automorphisms.py
"""

import numpy as np

from matorder.halfplane import (
    MobiusAutomorphism,
    apply_mobius,
    cayley,
    fit_canonical,
    in_half_plane,
    inverse_cayley,
    neg_inverse,
)
from matorder.linalg import herm_part, opnorm
from matorder.sampling import random_contraction, random_half_plane, random_hermitian, random_invertible

rng = np.random.default_rng(23)
n = 3

# ball -> half-plane -> ball
Y = random_contraction(rng, n)
Z = cayley(Y)
print("cayley image in half-plane:", in_half_plane(Z).inside)
print("round trip error:", f"{opnorm(inverse_cayley(Z) - Y):.2e}")

# negated inverse is an involution of the half-plane
W = random_half_plane(rng, n)
print("\nneg_inverse involution error:",
      f"{opnorm(neg_inverse(neg_inverse(W)) - W):.2e}")

# a random automorphism of the family
mob = MobiusAutomorphism(
    frame=random_invertible(rng, n),
    A=random_hermitian(rng, n) * 0.4,
    B=random_hermitian(rng, n) * 0.4,
    C=random_hermitian(rng, n) * 0.4,
    transpose=False,
)
V = apply_mobius(mob, W)
print("automorphism image stays in half-plane:", in_half_plane(V).inside)

# compose two automorphisms, then refit the composition inside the family;
# a Hermitian anchor pair (X0, composed(X0)) recenters the shifts first
other = MobiusAutomorphism(
    frame=random_invertible(rng, n),
    A=random_hermitian(rng, n) * 0.3,
    B=np.zeros((n, n)),
    C=random_hermitian(rng, n) * 0.3,
    transpose=False,
)
composed = lambda Z: apply_mobius(other, apply_mobius(mob, Z))
X0 = random_hermitian(rng, n) * 0.3
anchor = (X0, herm_part(composed(X0)))
refit = fit_canonical(composed, n, anchor=anchor)
worst = 0.0
for _ in range(25):
    P = random_half_plane(rng, n)
    worst = max(worst, opnorm(apply_mobius(refit, P) - composed(P)))
print("\ncomposition refit inside the family, worst error over 25 points:",
      f"{worst:.2e}")
print("recovered transpose flag:", refit.transpose)
