"""Lowest-order surface virtual element solver for the Laplace-Beltrami equation."""

from ._svem import (
    Mesh,
    SvemError,
    convergence,
    cylinder_half,
    cylinder_nominal_h,
    cylinder_pasted,
    mesh_size,
    paste,
    read_off,
    regularity,
    solve,
    sphere_hybrid,
    validate,
    write_off,
)

__all__ = [
    "Mesh",
    "SvemError",
    "convergence",
    "cylinder_half",
    "cylinder_nominal_h",
    "cylinder_pasted",
    "mesh_size",
    "paste",
    "read_off",
    "regularity",
    "solve",
    "sphere_hybrid",
    "validate",
    "write_off",
]
