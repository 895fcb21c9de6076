"""Negativity dynamics of two dipole-coupled atoms in a two-mode thermal field."""

from ._core import (
    build_thermal_weights,
    evolve_reduced,
    initial_atomic_density,
    negativity,
    negativity_series,
    partial_transpose,
    preset,
    preset_names,
    thermal_occupation,
    thermal_weight,
)

__version__ = "0.1.0"

__all__ = [
    "build_thermal_weights",
    "evolve_reduced",
    "initial_atomic_density",
    "negativity",
    "negativity_series",
    "partial_transpose",
    "preset",
    "preset_names",
    "thermal_occupation",
    "thermal_weight",
    "__version__",
]
