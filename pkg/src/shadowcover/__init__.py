"""Shadow covering, translate containment and mixed volumes for convex polytopes."""
from .config import Tolerances, tolerances
from .containment import (ContainmentWitness, ScaleResult, corner_normalize,
                          hide_behind_simplex_witness, lutwak_simplex_contains,
                          max_scale, min_cover_dilate, translate_into)
from .linalg import AffineMap, complement_basis, gram_schmidt, random_rotation, solve_linear
from .mixedvol import (InterpFamily, SteinerCoefficients, base_height_mixed,
                       brunn_minkowski_gap, interp_family, optimize_interp,
                       rogers_shephard_ratio, steiner_fit)
from .polytope import (Body, HPolytope, VPolytope, affine_image, cap_body, hull,
                       make_body, minkowski_sum, project, regular_simplex,
                       standard_simplex, to_hrep, to_vrep)
from .shadow import (BoundReport, CoveringReport, bound_report, covering_sweep,
                     covering_verdict, dilate_cover_certificate, sample_directions,
                     sample_subspaces, transport_verdict)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "Body",
    "BoundReport",
    "ContainmentWitness",
    "CoveringReport",
    "HPolytope",
    "InterpFamily",
    "ScaleResult",
    "SteinerCoefficients",
    "Tolerances",
    "VPolytope",
    "affine_image",
    "base_height_mixed",
    "bound_report",
    "brunn_minkowski_gap",
    "cap_body",
    "complement_basis",
    "corner_normalize",
    "covering_sweep",
    "covering_verdict",
    "dilate_cover_certificate",
    "gram_schmidt",
    "hide_behind_simplex_witness",
    "hull",
    "interp_family",
    "lutwak_simplex_contains",
    "make_body",
    "max_scale",
    "min_cover_dilate",
    "minkowski_sum",
    "optimize_interp",
    "project",
    "random_rotation",
    "regular_simplex",
    "rogers_shephard_ratio",
    "sample_directions",
    "sample_subspaces",
    "solve_linear",
    "standard_simplex",
    "steiner_fit",
    "to_hrep",
    "to_vrep",
    "tolerances",
    "translate_into",
    "transport_verdict",
]
