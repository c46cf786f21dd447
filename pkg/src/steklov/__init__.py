"""Discrete Steklov (Dirichlet-to-Neumann) spectra of trees with boundary.

The package builds trees whose leaves form the boundary, computes their
Steklov spectra through a Schur-complement reduction of the graph
Laplacian, generates the named extremal families with closed-form spectra
and explicit eigenfunctions, and verifies the extremal closed forms by
exhaustive isomorphism-free enumeration of small trees.
"""

__version__ = "0.1.0"

from steklov.enumeration import (
    ExtremalQuery,
    ExtremalRecord,
    enumerate_trees,
    explore_seesaw_conjecture,
    extremal_search,
    monotonicity_property_test,
    sigma2_max_closed_form,
    tree_from_prufer,
    verify_diameter_max,
    verify_sigma2_max,
    verify_sigma_k_max,
)
from steklov.families import (
    FamilyDescriptor,
    almost_fork,
    almost_seesaw,
    barbell,
    crab,
    even_attainer,
    even_ruler,
    lower_bound_construction,
    make_family,
    parse_family,
    path_family,
    predicted_eigenfunctions,
    predicted_spectrum,
)
from steklov.graph_core import (
    GraphWithBoundary,
    TreeWithLeafBoundary,
    all_diametral_paths,
    attains_even_diameter_bound,
    branch_decomposition,
    build_tree,
    canonical_code,
    diameter,
    rooted_depth,
    subtree,
)
from steklov.spectral import (
    EigenpairClaim,
    SymmetricSpectrum,
    boundary_degree_bound_check,
    deformed_spectrum,
    dtn_matrix,
    harmonic_extension,
    laplacian,
    normal_derivative,
    steklov_spectrum,
    verify_eigenpair,
)

__all__ = [
    "EigenpairClaim",
    "ExtremalQuery",
    "ExtremalRecord",
    "FamilyDescriptor",
    "GraphWithBoundary",
    "SymmetricSpectrum",
    "TreeWithLeafBoundary",
    "all_diametral_paths",
    "almost_fork",
    "almost_seesaw",
    "attains_even_diameter_bound",
    "barbell",
    "boundary_degree_bound_check",
    "branch_decomposition",
    "build_tree",
    "canonical_code",
    "crab",
    "deformed_spectrum",
    "diameter",
    "dtn_matrix",
    "enumerate_trees",
    "even_attainer",
    "even_ruler",
    "explore_seesaw_conjecture",
    "extremal_search",
    "harmonic_extension",
    "laplacian",
    "lower_bound_construction",
    "make_family",
    "monotonicity_property_test",
    "normal_derivative",
    "parse_family",
    "path_family",
    "predicted_eigenfunctions",
    "predicted_spectrum",
    "rooted_depth",
    "sigma2_max_closed_form",
    "steklov_spectrum",
    "subtree",
    "tree_from_prufer",
    "verify_diameter_max",
    "verify_eigenpair",
    "verify_sigma2_max",
    "verify_sigma_k_max",
]
