"""
Assignment module.

:return : Module initialization.
:return: Exports for minor-assignment feasibility, fitting and residuals.
"""

from gkk_tau.assign.fit import assignment_residual, fit_matrix_to_minors, hf_feasibility

__all__ = ["assignment_residual", "fit_matrix_to_minors", "hf_feasibility"]
