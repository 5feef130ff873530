"""Ideals of 2-minors of hypermatrices, Segre-Veronese varieties and projected
Veronese varieties, with exact arithmetic over QQ and GF(p)."""

from .field import GF, QQ, Scalar, parse_field
from .groebner import IdealBasis, eliminate, groebner_basis, ideal_equal, kernel_of_map
from .hypermatrix import (
    Hypermatrix,
    classify_weak_generic,
    d_minors,
    flatten,
    generic_hypermatrix,
    ideal_of_minors,
    section,
)
from .poly import FormMatrix, PolyRing, Polynomial
from .projection import ProjectionModel, ProjectionProfile, verify_projection
from .symtensor import SymProfile, generic_sym_hypermatrix
from .varieties import graded_kernel, graded_kernel_dim, segre_veronese_map, verify_segre_veronese

__all__ = [
    "GF", "QQ", "Scalar", "parse_field",
    "IdealBasis", "eliminate", "groebner_basis", "ideal_equal", "kernel_of_map",
    "Hypermatrix", "classify_weak_generic", "d_minors", "flatten",
    "generic_hypermatrix", "ideal_of_minors", "section",
    "FormMatrix", "PolyRing", "Polynomial",
    "ProjectionModel", "ProjectionProfile", "verify_projection",
    "SymProfile", "generic_sym_hypermatrix",
    "graded_kernel", "graded_kernel_dim", "segre_veronese_map", "verify_segre_veronese",
]

__version__ = "0.1.0"
