"""
Interlacing module.

:return : Module initialization.
:return: Exports for the three interlacing certifiers and the leading-submatrix sweep.
"""

from gkk_tau.interlace.polynomials import (
    hermite_biehler_same_side,
    hurwitz_interlace,
    interlace_check_roots,
    leading_submatrix_interlacing,
)

__all__ = [
    "hermite_biehler_same_side",
    "hurwitz_interlace",
    "interlace_check_roots",
    "leading_submatrix_interlacing",
]
