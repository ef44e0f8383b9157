"""Exact adjoint algebras and class functions for module categories over finite-dimensional Hopf algebras."""

from .adjoint import adjoint_solve
from .classfun import c_psi_space, class_functions, yd_hom
from .closedforms import dual_case_basis, group_case_basis
from .exactfield import CycNumber, root_of_unity
from .groups import NAMED_GROUPS, FiniteGroup

__version__ = "0.1.0"

__all__ = [
    "CycNumber",
    "FiniteGroup",
    "NAMED_GROUPS",
    "adjoint_solve",
    "c_psi_space",
    "class_functions",
    "dual_case_basis",
    "group_case_basis",
    "root_of_unity",
    "yd_hom",
]
