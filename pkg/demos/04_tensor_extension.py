"""Tensoring with a constant R^3 sheaf multiplies every block by I3.

Run: python3 demos/04_tensor_extension.py
"""

import numpy as np

from sheaflab import coboundary_matrix, face_extension_sheaf, hodge_laplacian, tensor_extension_sheaf
from sheaflab.fixtures import unit_right_triangle
from sheaflab.sheaf import RATIONAL

G = unit_right_triangle()
F = face_extension_sheaf(G, field=RATIONAL)
T = tensor_extension_sheaf(G, face_vectors={(1, 2, 3): [0, 0, 1]}, field=RATIONAL)

print("stalk dims of the tensor sheaf:", {s: T.stalk_dims[s] for s in [(1,), (1, 2), (1, 2, 3)]})

C, CT = coboundary_matrix(F, 0), coboundary_matrix(T, 0)
print("C0 shapes:", C.shape, "->", CT.shape)
I3 = np.eye(3, dtype=int).astype(object)
print("C0 of tensor == kron(C0, I3):", (CT == np.kron(C, I3)).all())
print("L0 of tensor == kron(L0, I3):",
      (hodge_laplacian(T, 0, "up") == np.kron(hodge_laplacian(F, 0, "up"), I3)).all())
