"""Exact Borel subalgebras of monomial quiver algebras.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .quiver import (Arrow, BoundQuiver, InfiniteDimensional, MonomialAlgebra, Path,
                     QuiverError, VertexOrder, enumerate_basis, ideal_contains, max_vertex,
                     path_product)
from .borel import (borel_max_basis, borel_min_basis, delta_sub_basis, is_direction_preserving,
                    reedy_factorize, right_minimal_dp_paths, right_module_decomposition)
from .homalg import check_quasi_hereditary, delta_presentation, ext1_dim, verify_exact_borel
from .regularity import (dim_ext_delta_delta, e_prime, regular_borel_criterion,
                         regular_borel_hereditary)
from .census import (FamilySpec, catalan, enumerate_structures, essential_order, family_quiver,
                     predicted_counts)

__version__ = "0.1.0"

__all__ = [
    "Arrow", "BoundQuiver", "InfiniteDimensional", "MonomialAlgebra", "Path", "QuiverError",
    "VertexOrder", "enumerate_basis", "ideal_contains", "max_vertex", "path_product",
    "borel_max_basis", "borel_min_basis", "delta_sub_basis", "is_direction_preserving",
    "reedy_factorize", "right_minimal_dp_paths", "right_module_decomposition",
    "check_quasi_hereditary", "delta_presentation", "ext1_dim", "verify_exact_borel",
    "dim_ext_delta_delta", "e_prime", "regular_borel_criterion", "regular_borel_hereditary",
    "FamilySpec", "catalan", "enumerate_structures", "essential_order", "family_quiver",
    "predicted_counts",
]
