"""
How flat is a constraint matrix?
================================

The flatness of a basis is one over the largest column norm of the
transposed inverse of its normalized rows; geometrically it is the worst
sine of the angle between one row and the span of the others.  The
flatness of a whole matrix is the minimum over all independent bases, and
it is invariant under rotating the rows.
"""

import numpy as np

from polywalk import (
    delta_A,
    delta_basis,
    delta_hat,
    gen_hypercube,
    gen_random_sphere,
    gen_simplex,
    random_orthogonal,
    rotate_rows,
)

# --- Two formulas, one number -------------------------------------------
vectors = np.array([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 1.0, 1.0]])
by_inverse = delta_basis(vectors)
by_angles = min(delta_hat(np.delete(vectors, k, axis=0), vectors[k])
                for k in range(3))
print(f"staircase basis: inverse formula {by_inverse:.6f}, "
      f"worst angle {by_angles:.6f}")

# --- Whole-matrix flatness across families ------------------------------
for inst in (gen_hypercube(3), gen_simplex(3), gen_random_sphere(9, 3, seed=0)):
    report = delta_A(inst)
    print(f"{inst.name}: delta {report.delta:.6f} attained by rows "
          f"{report.argmin_basis} ({report.n_bases_checked} bases checked)")

# --- Rotation invariance -------------------------------------------------
base = gen_random_sphere(9, 3, seed=1)
original = delta_A(base).delta
for seed in range(3):
    rotated = rotate_rows(base, random_orthogonal(3, seed=seed))
    print(f"rotation seed {seed}: delta {delta_A(rotated).delta:.12f} "
          f"(original {original:.12f})")
