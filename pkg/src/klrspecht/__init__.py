"""Graded Specht modules for KLR algebras of types C_inf and C_l^(1)."""

from .root_data import CartanType, DominantWeight, RootVector
from .combinatorics import Multipartition, Node, Tableau
from .exact_algebra import LaurentPolynomial, q
from .klr_engine import KLRAlgebra, NormalFormElement
from .specht import build_permutation_module, build_specht, garnir_element, verify_basis, branch_check

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "DominantWeight",
    "RootVector",
    "Multipartition",
    "Node",
    "Tableau",
    "LaurentPolynomial",
    "q",
    "KLRAlgebra",
    "NormalFormElement",
    "build_permutation_module",
    "build_specht",
    "garnir_element",
    "verify_basis",
    "branch_check",
]
