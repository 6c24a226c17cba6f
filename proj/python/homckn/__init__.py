"""Hardy and Caffarelli-Kohn-Nirenberg type inequalities on homogeneous groups."""

from ._homckn import (
    HomcknError,
    constants,
    homogeneity_deviation,
    homogeneous_dimension,
    norm,
    radial_derivative,
    sharpness_scan,
    sphere_measure,
    verify,
)

__all__ = [
    "HomcknError",
    "constants",
    "homogeneity_deviation",
    "homogeneous_dimension",
    "norm",
    "radial_derivative",
    "sharpness_scan",
    "sphere_measure",
    "verify",
]
