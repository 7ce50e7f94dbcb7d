"""Exact-arithmetic Darboux normal forms, structure verifiers, and
chart-level calculus for linear geometric structures over the rationals."""

from .linalg import Mat, Subspace, rank, kernel_basis, inverse
from .exterior import AltForm, Frame, wedge, interior, pullback, one_kernel, \
    r_orthogonal
from .normal_form import (
    CanonicalTemplate,
    DarbouxReport,
    PreconditionError,
    compute_splitting,
    cosymplectic_darboux,
    k_cosymplectic_darboux,
    k_presymplectic_darboux,
    k_precosymplectic_darboux,
    k_symplectic_darboux,
    precosymplectic_darboux,
    presymplectic_darboux,
    reeb_solve,
    symplectic_darboux,
)
from .verifier import StructureSpec, Verdict, classify
from .polyforms import Poly, PolyForm, PolyMap, PolyVectorField
from .connection import Connection, TensorField

__all__ = [
    "AltForm", "CanonicalTemplate", "Connection", "DarbouxReport", "Frame",
    "Mat", "Poly", "PolyForm", "PolyMap", "PolyVectorField",
    "PreconditionError", "StructureSpec", "Subspace", "TensorField",
    "Verdict", "classify", "compute_splitting", "cosymplectic_darboux",
    "interior", "inverse", "k_cosymplectic_darboux", "k_presymplectic_darboux",
    "k_precosymplectic_darboux", "k_symplectic_darboux", "kernel_basis",
    "one_kernel", "precosymplectic_darboux", "presymplectic_darboux",
    "pullback", "r_orthogonal", "rank", "reeb_solve", "symplectic_darboux",
    "wedge",
]

__version__ = "0.1.0"
