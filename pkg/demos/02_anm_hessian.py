"""The anisotropic network model Hessian as a sheaf Laplacian.

Each edge stalk is one-dimensional and each vertex stalk is R^3. The restriction
map from a vertex to an edge projects onto the bond direction, so the degree-0
Laplacian collects the familiar 3x3 projection blocks.

Run: python3 demos/02_anm_hessian.py
"""

import numpy as np

from sheaflab import anm_hessian_direct, anm_sheaf, cohomology_dimension, hodge_laplacian, rips_complex

rng = np.random.default_rng(7)
coords = rng.uniform(0, 1, (8, 3))
G = rips_complex(coords, 0.8, max_dim=1)
print("vertices, edges:", G.complex.f_vector())

gamma = 2.5
L = hodge_laplacian(anm_sheaf(G, gamma), 0)
H = anm_hessian_direct(G, gamma)
err = np.abs(L - H).max() / (1 + np.abs(H).max())
print(f"max relative difference between L0 and the direct Hessian: {err:.2e}")

# Zero modes: rigid motions plus any floppy directions the network allows.
w = np.linalg.eigvalsh(L)
print("smallest eigenvalues:", np.round(w[:8], 6))
print("H0 dimension (global sections):", cohomology_dimension(anm_sheaf(G, gamma), 0))

# A single bond has five zero modes: three translations and two rotations.
edge = rips_complex([[0, 0, 0], [1, 0, 0]], 1.5, max_dim=1)
print("one bond, H0 =", cohomology_dimension(anm_sheaf(edge), 0))
