"""Stabiliser-code toolkit: error spread of logical implementations and the checks around it."""

__version__ = "0.1.0"

from .pauli import PauliOperator, CliffordMap, pauli_from_string, pauli_to_string, weight, multiply, commutes, conjugate
from .codes import StabiliserCode, build_steane, build_reed_muller, build_toric, build_surface2d, build_surface3d, concatenate, make_family

__all__ = [
    "__version__",
    "PauliOperator",
    "CliffordMap",
    "pauli_from_string",
    "pauli_to_string",
    "weight",
    "multiply",
    "commutes",
    "conjugate",
    "StabiliserCode",
    "build_steane",
    "build_reed_muller",
    "build_toric",
    "build_surface2d",
    "build_surface3d",
    "concatenate",
    "make_family",
]
