"""Shear maps on Hermitian matrices: apply, invert, and certify membership.

The central object is the map X -> (X A + I)^{-1} X attached to a Hermitian
base A. It is defined wherever X A + I is invertible, fixes 0, and the map
built from -A undoes it. This script walks through those facts numerically.

Run: python3 demos/01_shear_map_basics.py
"""

import numpy as np

from matorder.linalg import opnorm
from matorder.localiso import (
    in_shear_domain,
    in_zero_component,
    path_to_zero,
    shear_apply,
)
from matorder.sampling import random_hermitian

rng = np.random.default_rng(7)
n = 3

A = random_hermitian(rng, n)
X = random_hermitian(rng, n) * 0.4

print("base A eigenvalues:", np.round(np.linalg.eigvalsh(A), 3))
print("in shear domain:", in_shear_domain(A, X))
print("in the connected component of 0:", in_zero_component(A, X))

Y = shear_apply(A, X)
print("\nimage Y = (XA + I)^-1 X:")
print(np.round(Y, 4))

# the mirrored base inverts the map
back = shear_apply(-A, Y)
print("\nround trip error |shear(-A, shear(A, X)) - X| =",
      f"{opnorm(back - X):.2e}")

# the left and the right formulas agree
left = np.linalg.solve(X @ A + np.eye(n), X)
right = np.linalg.solve((A @ X + np.eye(n)).T, X.T).T
print("left vs right formula gap =", f"{opnorm(left - right):.2e}")

# membership in the component of 0 has an exact inertia criterion; a
# randomized piecewise-linear path search certifies it independently
result = path_to_zero(A, X, seed=0)
print("\npath search found a path:", result.found,
      f"({result.nodes_used} waypoints explored)")
if result.found:
    print("path length in segments:", len(result.path) - 1)

# a point beyond the singular surface is outside the component even
# though the map itself is still defined there
X_far = np.diag([-3.0, 0.0, 0.0]).astype(complex)
A_diag = np.diag([2.0, -1.0, 0.5]).astype(complex)
print("\nfar point: in domain =", in_shear_domain(A_diag, X_far),
      "| in zero component =", in_zero_component(A_diag, X_far))
