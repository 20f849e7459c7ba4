"""Exact sphere packing orbits, lattice invariants and orbit-count exponents."""

from ._core import (
    CheckpointError,
    ConfigError,
    PreconditionError,
    TruncationError,
    catalog_names,
    curvature_exponent,
    descartes_residual,
    discriminant_group,
    enumerate_packing,
    fit_exponent,
    is_packing_polytope,
    maxwell_level,
    surface_exponent,
    verify_model,
)

__all__ = [
    "CheckpointError",
    "ConfigError",
    "PreconditionError",
    "TruncationError",
    "catalog_names",
    "curvature_exponent",
    "descartes_residual",
    "discriminant_group",
    "enumerate_packing",
    "fit_exponent",
    "is_packing_polytope",
    "maxwell_level",
    "surface_exponent",
    "verify_model",
]
