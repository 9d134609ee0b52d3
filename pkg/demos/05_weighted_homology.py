"""Weighted homology and the cosheaf built from a weight function.

Weights must divide along faces. Over the rationals nothing changes, but over
the integers the weights can introduce torsion.

Run: python3 demos/05_weighted_homology.py
"""

from sheaflab import build_from_facets, validate_weight, weight_cosheaf, weighted_boundary_matrix
from sheaflab.hodge import EXACT, cohomology_dimension
from sheaflab.weighted import homology_table, smith_normal_form

K = build_from_facets(3, [(1, 2, 3)])
w = {s: 2 ** (len(s) - 1) for s in K}  # 1 on vertices, 2 on edges, 4 on the face
print("weight violations:", validate_weight(K, w))

d2 = weighted_boundary_matrix(K, w, 2)
print("weighted boundary of the triangle:", list(d2[:, 0]))
print("Smith form diagonal of d1:", smith_normal_form(weighted_boundary_matrix(K, w, 1)).diagonal)

print("over Q:", homology_table(K, w, "Q"))
print("over Z:", homology_table(K, w, "Z"))

# The same numbers come out of the cosheaf's Laplacian kernel.
F = weight_cosheaf(K, w)
print("cosheaf H^q:", [cohomology_dimension(F, q, EXACT) for q in range(3)])

# A bad weight: 3 on the face is not a multiple of 2 on its edges.
w[(1, 2, 3)] = 3
print("violations with face weight 3:", len(validate_weight(K, w)))
