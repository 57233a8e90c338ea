"""The orthogonal torus pair and explicit principal points.

The stabilizer of the scaled cyclic shift is a second maximal torus,
orthogonal to the diagonal one. Solving J - g^{-1} J g = zeta with g in the
diagonal torus and zeta in the partner torus produces phase points whose
joint stabilizer is discrete.
"""

import numpy as np

from redint.apposition import (
    build_frame,
    cyclic_shift,
    frame_orthogonality_residual,
    random_partner_algebra,
    random_torus_group,
    solve_moment_equation,
    stacked_torus_rank,
)
from redint.groups import joint_centralizer_dim, norm

print("== the scaled cyclic shift ==")
for n in (2, 3, 4, 5):
    lam = cyclic_shift(n)
    vals = np.angle(np.linalg.eigvals(lam))
    print(f"n={n}: det residual {abs(np.linalg.det(lam) - 1):.1e}, "
          f"eigenphases {np.sort(vals).round(3)}")

print("\n== frames ==")
for n in (2, 3, 4, 5):
    frame = build_frame(n)
    print(f"n={n}: orthogonality residual {frame_orthogonality_residual(frame):.1e}, "
          f"stacked rank {stacked_torus_rank(frame)} of {2 * (n - 1)}")

print("\n== moment equation over the partner torus ==")
frame = build_frame(3)
for i in range(3):
    g = random_torus_group(frame, 100 + i)
    zeta = random_partner_algebra(frame, 200 + i)
    J = solve_moment_equation(g, zeta)
    res = norm(J - g.conj().T @ J @ g - zeta)
    iso = joint_centralizer_dim([J], [g])
    print(f"sample {i}: residual {res:.1e}, joint stabilizer dimension {iso}")
print("\nminimal-norm solutions carry no diagonal component:")
print("|diag(J)| =", f"{np.linalg.norm(np.diag(J)):.1e}")
