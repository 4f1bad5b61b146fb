"""Inversive-distance circle packings on the Ma-Schlenker octahedron.

Build the planar flowed configurations, locate the critical parameter,
lift pairs of packings to the sphere and certify that they are not
inversive equivalent.
"""

from .construction import (
    MsParams,
    configuration,
    criticality_check,
    find_extrema,
    find_pair,
    involution_partner,
    profile_d,
)
from .inversive import (
    MobiusMap,
    PlanarCircle,
    SphericalCircle,
    apply_mobius,
    inv_dist_plane,
    inv_dist_sphere,
    stereographic_drop,
    stereographic_lift,
)
from .polyhedral import angle_sums, length_function, octahedron
from .sphere import (
    certify_nonequivalence,
    lift_and_normalize,
    normalization_context,
    normalized_realization,
    tangency_example,
    validate_packing,
)

__version__ = "0.1.0"

__all__ = [
    "MobiusMap",
    "MsParams",
    "PlanarCircle",
    "SphericalCircle",
    "angle_sums",
    "apply_mobius",
    "certify_nonequivalence",
    "configuration",
    "criticality_check",
    "find_extrema",
    "find_pair",
    "inv_dist_plane",
    "inv_dist_sphere",
    "involution_partner",
    "length_function",
    "lift_and_normalize",
    "normalization_context",
    "normalized_realization",
    "octahedron",
    "profile_d",
    "stereographic_drop",
    "stereographic_lift",
    "tangency_example",
    "validate_packing",
]
