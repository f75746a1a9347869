"""Robin-Laplacian eigenvalues on constant-curvature geodesic disks."""

from ._robincap import (
    MAX_SPHERICAL_THETA,
    T3,
    DomainError,
    Error,
    SolverError,
    area_a,
    area_lemmas,
    beta_curve,
    cap_coordinates,
    classify_point,
    eigenvalues,
    fl_upper_boundary,
    iv_v_corner,
    radial_profile,
    robin_alpha,
    second_eigenvalue,
    sn,
    special_constants,
    theta_from_t,
    weight,
)

__all__ = [
    "MAX_SPHERICAL_THETA",
    "T3",
    "DomainError",
    "Error",
    "SolverError",
    "area_a",
    "area_lemmas",
    "beta_curve",
    "cap_coordinates",
    "classify_point",
    "eigenvalues",
    "fl_upper_boundary",
    "iv_v_corner",
    "radial_profile",
    "robin_alpha",
    "second_eigenvalue",
    "sn",
    "special_constants",
    "theta_from_t",
    "weight",
]
