"""Exact verification of Hopf-algebraic identities for group schemes over F_p."""

from .catalog import GroupScheme, base_ring, catalog, frobenius_hom, make_scheme
from .checks import Check
from .errors import CleftError
from .hopf import HopfPresentation, UnitGroup, build_unit_group, check_hopf_axioms, convolution_inverse
from .localized import Frac, LocalizedRing
from .polynomial import Poly, parse_poly
from .torsors import cleft_obstruction_search, make_torsor

__all__ = [
    "Check", "CleftError", "Frac", "GroupScheme", "HopfPresentation", "LocalizedRing", "Poly", "UnitGroup",
    "base_ring", "build_unit_group", "catalog", "check_hopf_axioms", "cleft_obstruction_search",
    "convolution_inverse", "frobenius_hom", "make_scheme", "make_torsor", "parse_poly",
]

__version__ = "0.1.0"
