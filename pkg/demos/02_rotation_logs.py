"""Logarithms and geodesic distances on SO(n).

The principal logarithm of a rotation only needs its real Schur form: each
2 x 2 block lam*[cos -sin; sin cos] maps to theta*[0 -1; 1 0].  Here we
round-trip through exp and log and measure the distance between rotations.
"""

import numpy as np

from nrmschur import expm_skew, haar_orthogonal, logm_normal, so_distance

rng = np.random.default_rng(1)
n = 8

# a skew matrix with rotation angles safely inside (-pi, pi)
k = rng.standard_normal((n, n))
k = 0.3 * (k - k.T)
q = expm_skew(k)
print("Q orthogonal:", np.allclose(q.T @ q, np.eye(n)), " det:", round(np.linalg.det(q), 12))

# log undoes exp on the principal branch
k_back = logm_normal(q)
print("log(exp(K)) - K:", f"{np.abs(k_back - k).max():.1e}")

# distance from the identity is ||log Q||_F
print("distance to I:", round(so_distance(np.eye(n), q), 10), "=", round(np.linalg.norm(k, "fro"), 10))

# a rotation by exactly pi in one plane still has a well defined (real) log
minus = np.eye(n)
minus[:2, :2] = -np.eye(2)
print("log of a half turn:\n", np.round(logm_normal(minus)[:2, :2], 6))

# two Haar rotations are typically far apart
a, b = haar_orthogonal(n, rng), haar_orthogonal(n, rng)
if np.linalg.det(a) < 0:
    a[:, 0] *= -1
if np.linalg.det(b) < 0:
    b[:, 0] *= -1
print("distance between two random rotations:", round(so_distance(a, b), 4))
