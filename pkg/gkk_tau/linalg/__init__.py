"""
Linear algebra module.

:return : Module initialization.
:return: Exports for determinants, spectra and characteristic polynomials.
"""

from gkk_tau.linalg.core import (
    char_poly,
    determinant,
    eigenvalues,
    min_real_eigenvalue,
)

__all__ = ["char_poly", "determinant", "eigenvalues", "min_real_eigenvalue"]
