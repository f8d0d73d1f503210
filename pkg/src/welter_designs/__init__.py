"""Steiner systems, the Welter-type games whose P-positions are their blocks, and game distributions."""

from .core import Permutation, elements, enumerate_k_subsets, mask_of, subset_image
from .designs import (
    Design,
    DesignError,
    apply_permutation,
    derived_design,
    is_design,
    is_projective_vy,
    lambda_i,
    make_affine_sts,
    make_cyclic_design,
    make_matching_design,
    make_projective_sts,
    make_shuffle_s5612,
)
from .distributions import DistributionReport, game_distribution, projective_by_distribution
from .games import Welter, WelterM, b_position, game_for_design, outcomes, winning_set

__version__ = "0.1.0"

__all__ = [
    "Permutation", "elements", "enumerate_k_subsets", "mask_of", "subset_image",
    "Design", "DesignError", "apply_permutation", "derived_design", "is_design",
    "is_projective_vy", "lambda_i", "make_affine_sts", "make_cyclic_design",
    "make_matching_design", "make_projective_sts", "make_shuffle_s5612",
    "DistributionReport", "game_distribution", "projective_by_distribution",
    "Welter", "WelterM", "b_position", "game_for_design", "outcomes", "winning_set",
]
