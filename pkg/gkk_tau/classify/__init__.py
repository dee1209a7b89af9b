"""
Class certifiers.

:return : Certifier API.
:return: classify, run_check and the individual checks.
"""

from gkk_tau.classify.checks import (
    dispersal_sign_check,
    gkk_check,
    hadamard_fischer_check,
    m_matrix_check,
    newton_check,
    omega_tau_check,
    p_matrix_check,
    sign_symmetric_check,
    stability_check,
    strict_gkk_check,
    varga_cone_check,
)
from gkk_tau.classify.report import CHECK_NAMES, ClassificationReport, classify, run_check

__all__ = [
    "CHECK_NAMES",
    "ClassificationReport",
    "classify",
    "dispersal_sign_check",
    "gkk_check",
    "hadamard_fischer_check",
    "m_matrix_check",
    "newton_check",
    "omega_tau_check",
    "p_matrix_check",
    "run_check",
    "sign_symmetric_check",
    "stability_check",
    "strict_gkk_check",
    "varga_cone_check",
]
