"""Sheaves of rings: monomial ideals and Z/n gluing.

Run: python3 demos/06_ringed.py
"""

from sheaflab import (
    MonomialIdeal,
    ZnRingSheaf,
    build_from_facets,
    build_ideal_sheaf,
    fibre_product_zn,
    validate_ideal_functor,
    zn_global_sections,
)
from sheaflab.ringed import IdealSheafAssignment, ring_closure_failures

K = build_from_facets(3, [(1, 2, 3)])
for kind in ("vertex", "edge_product", "complement_prime"):
    A = build_ideal_sheaf(K, kind)
    print(f"{kind:17s} {A.variance:13s} I[1,2] = {A.ideals[(1, 2)]}  failures: {len(validate_ideal_functor(A))}")

# Shrinking one ideal breaks containment along exactly one face.
A = build_ideal_sheaf(K, "vertex")
ideals = dict(A.ideals)
ideals[(1, 2)] = MonomialIdeal.from_monomials(3, [(1,)])
bad = validate_ideal_functor(IdealSheafAssignment(K, A.variance, ideals))
print("broken pairs:", [(c.face, c.coface) for c in bad])

# One edge: Z/12 and Z/18 glued over Z/6.
E = build_from_facets(2, [(1, 2)])
S = ZnRingSheaf(E, {(1,): 12, (2,): 18, (1, 2): 6})
sections = zn_global_sections(S)
print("global sections:", sections.size)
print("equal to the fibre product:", sorted(sections.elements) == fibre_product_zn(12, 18, 6))
print("closed under + and *:", not ring_closure_failures(S, sections.elements))

# On a path, each edge cuts the count by its modulus.
P = build_from_facets(3, [(1, 2), (2, 3)])
mods = {(1,): 4, (2,): 12, (3,): 6, (1, 2): 4, (2, 3): 3}
print("path sections:", zn_global_sections(ZnRingSheaf(P, mods)).size, "= 4*12*6/(4*3)")
