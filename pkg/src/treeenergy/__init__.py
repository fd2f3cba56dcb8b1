"""Energy of extremal bounded-degree trees.

Builds the complete d-ary trees C_h, the apex trees B_n and the
minimal-energy trees T*_{n,d}; computes energies with a dense eigensolver
and an exact matching-polynomial engine; evaluates the limiting constant
alpha_d; and enumerates bounded-degree trees for exhaustive checks.
"""

__version__ = "0.1.0"

from .alpha import AlphaEstimate, alpha, alpha_table
from .enumeration import EnumSpec, MinEnergyReport, enumerate_trees, min_energy_search, prufer_oracle
from .errors import CapExceededError, InvariantViolation, ParameterError, TreeEnergyError, TreeParseError
from .spectral import (
    EnergyResult,
    MatchingPolynomial,
    Method,
    Spectrum,
    energy,
    matching_polynomial,
    spectrum_dense,
    spectrum_from_polynomial,
)
from .treeio import parse_graph6, parse_tree, serialize_tree
from .trees import (
    DigitalExpansion,
    RootedTree,
    Terminal,
    Tree,
    bn_tree,
    build_tstar,
    canonical_code,
    canonical_form,
    complete_dary,
    digital_expansion,
)

__all__ = [
    "AlphaEstimate", "alpha", "alpha_table",
    "EnumSpec", "MinEnergyReport", "enumerate_trees", "min_energy_search", "prufer_oracle",
    "CapExceededError", "InvariantViolation", "ParameterError", "TreeEnergyError", "TreeParseError",
    "EnergyResult", "MatchingPolynomial", "Method", "Spectrum", "energy", "matching_polynomial",
    "spectrum_dense", "spectrum_from_polynomial",
    "parse_graph6", "parse_tree", "serialize_tree",
    "DigitalExpansion", "RootedTree", "Terminal", "Tree", "bn_tree", "build_tstar",
    "canonical_code", "canonical_form", "complete_dary", "digital_expansion",
]
