"""A first look at the real Schur form of a normal matrix.

We sample a normal matrix with some real eigenvalues, decompose it, and check
the three things a user cares about: the reconstruction, the orthogonality of
Q, and agreement with a general-purpose eigenvalue solver.
"""

import numpy as np

from nrmschur import (
    SpectrumSpec,
    hausdorff_distance,
    normal_schur,
    orthogonality_defect,
    random_normal_matrix,
    relative_residual,
)

rng = np.random.default_rng(0)

# 12 x 12 normal matrix, about a third of the eigenvalues real
a, truth = random_normal_matrix(SpectrumSpec(12, "alpha_mix", 0.3), rng)
bs = normal_schur(a)
print(f"n = {bs.n}: {bs.p} complex pairs, {bs.r} real eigenvalues")

# Q is laid out as [Q_c1 | Q_r | Q_c2]; S is block diagonal in that layout
s = bs.schur_matrix()
print("relative residual   ", f"{relative_residual(a, bs.q, s):.1e}")
print("orthogonality defect", f"{orthogonality_defect(bs.q):.1e}")

# eigenvalues come for free from (lam, theta) and lam_real
mine = bs.eigenvalues()
other = np.linalg.eigvals(a)
print("distance to numpy eigvals", f"{hausdorff_distance(mine, other):.1e}")

# pair j lives in columns j and p + r + j
j = 0
q1, q2 = bs.q[:, j], bs.q[:, bs.p + bs.r + j]
block = np.array([[q1 @ a @ q1, q1 @ a @ q2], [q2 @ a @ q1, q2 @ a @ q2]])
print("first 2 x 2 block:\n", np.round(block, 6))
print("expected lam*[cos -sin; sin cos] with lam, theta =", bs.lam[j].round(6), bs.theta[j].round(6))
