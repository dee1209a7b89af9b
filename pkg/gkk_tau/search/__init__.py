"""
Search module.

:return : Module initialization.
:return: Exports for class predicates, samplers, hill descent and the frontier survey.
"""

from gkk_tau.search.classes import evaluate_objective, is_member, random_matrix_in_class
from gkk_tau.search.frontier import class_frontier_survey
from gkk_tau.search.hill_climb import approximate_by_strict_gkk, dispersal_profile, extremal_search

__all__ = [
    "approximate_by_strict_gkk",
    "class_frontier_survey",
    "dispersal_profile",
    "evaluate_objective",
    "extremal_search",
    "is_member",
    "random_matrix_in_class",
]
