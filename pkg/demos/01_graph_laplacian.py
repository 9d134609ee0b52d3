"""Constant sheaves recover graph Laplacians and Betti numbers.

Run: python3 demos/01_graph_laplacian.py
"""

import numpy as np

from sheaflab import build_from_facets, cohomology_dimension, constant_sheaf, gnm_sheaf, hodge_laplacian
from sheaflab.sheaf import RATIONAL

# A 4-cycle with one chord: vertices 1..4, edges listed as facets.
K = build_from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
print("f-vector:", K.f_vector())

# With one-dimensional stalks and identity maps, the degree-0 Laplacian is D - A.
L = hodge_laplacian(constant_sheaf(K), 0)
print("L0 of the constant sheaf:\n", L)
A = np.zeros((4, 4), dtype=int)
for i, j in K.simplices(1):
    A[i - 1, j - 1] = A[j - 1, i - 1] = 1
print("equals D - A:", np.array_equal(L, np.diag(A.sum(1)) - A))

# Kernel dimensions count components and independent cycles.
F = constant_sheaf(K)
print("H0, H1 =", [cohomology_dimension(F, q) for q in (0, 1)])

# Filling in both triangles kills the cycles.
K2 = build_from_facets(4, [(1, 2, 3), (1, 3, 4)])
print("after filling:", [cohomology_dimension(constant_sheaf(K2), q) for q in range(3)])

# The Gaussian network model puts lambda * I3 on every map; its Laplacian is
# lambda^2 times the graph Laplacian, blown up by I3.
G = gnm_sheaf(K, 2, field=RATIONAL)
L3 = hodge_laplacian(G, 0)
print("GNM block (1,1):\n", L3[:3, :3].astype(float))
print("matches 4 * kron(L, I3):",
      all(L3[r, c] == 4 * np.kron(L, np.eye(3, dtype=int))[r, c] for r in range(12) for c in range(12)))
