"""Cellular sheaves on simplicial complexes: construction, Laplacians, cohomology."""

from .complex import (
    GeometricComplex,
    SimplicialComplex,
    build_from_facets,
    incidence_sign,
    load_complex,
    rips_complex,
    save_complex,
)
from .constructors import (
    anm_hessian_direct,
    anm_sheaf,
    face_extension_sheaf,
    gnm_sheaf,
    tensor_extension_sheaf,
)
from .hodge import (
    coboundary_matrix,
    cochain_system,
    cohomology_dimension,
    global_sections,
    hodge_laplacian,
    spectrum,
)
from .ringed import (
    MonomialIdeal,
    ZnRingSheaf,
    build_ideal_sheaf,
    fibre_product_zn,
    monomial_ideal_contains,
    validate_ideal_functor,
    zn_global_sections,
)
from .sheaf import Sheaf, constant_sheaf, load_sheaf, save_sheaf, tensor_product, validate_sheaf
from .weighted import (
    WeightFunction,
    smith_normal_form,
    validate_weight,
    verify_weighted_equivalence,
    weight_cosheaf,
    weighted_boundary_matrix,
    weighted_homology,
)

__version__ = "0.1.0"
