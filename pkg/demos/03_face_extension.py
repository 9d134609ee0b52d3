"""Adding triangles: the face-extension sheaf on a small surface patch.

Vertices carry a scalar, edges carry R^3, and triangles carry a scalar. A
vertex maps into an edge along the bond vector, and an edge maps into a
triangle by pairing with the face normal. The bond lies in the face plane, so
the composite vertex -> edge -> face map is zero.

Run: python3 demos/03_face_extension.py
"""

import numpy as np

from sheaflab import coboundary_matrix, face_extension_sheaf, hodge_laplacian, rips_complex, validate_sheaf
from sheaflab.fixtures import unit_right_triangle

G = unit_right_triangle()
F = face_extension_sheaf(G)
print("restriction [1,2] -> [1,2,3]:", F.restriction((1, 2), (1, 2, 3)))
print("violations:", validate_sheaf(F))

L = hodge_laplacian(F, 0, "up")
print("L0 (off-diagonal entries are -w^2 |r_j - r_i|^2):\n", L)

# Edge (i,j) contributes 2 w^2 (r_j - r_i)(r_j - r_i)^T to the diagonal of C C^T.
C = coboundary_matrix(F, 0)
print("block of C C^T for edge [1,2]:\n", (C @ C.T)[:3, :3])

# A bumpier patch with edge weights.
pts = np.array([[0, 0, 0], [1, 0, 0.2], [0, 1, 0.1], [1, 1, 0.4], [0.5, 0.5, 0.9]])
P = rips_complex(pts, 1.2, max_dim=2)
weights = {e: 1 + 0.1 * k for k, e in enumerate(P.complex.simplices(1))}
FP = face_extension_sheaf(P, weights)
print("patch f-vector:", P.complex.f_vector(), "violations:", len(validate_sheaf(FP)))
print("degree-1 Laplacian shape:", hodge_laplacian(FP, 1).shape)
