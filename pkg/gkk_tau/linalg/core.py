"""
Dense real linear algebra substrate.

Determinants come from LU with partial pivoting (numpy), eigenvalues from
LAPACK's Hessenberg/QR driver (scipy). Exact determinants over the
rationals are available for small integer or rational input.

:return : Linear algebra utilities.
:return: determinant, eigenvalues, min_real_eigenvalue, char_poly and helpers.
"""

from fractions import Fraction
from typing import List, Sequence
import logging

import numpy as np
import scipy.linalg

from gkk_tau.config import DEFAULT_TOLERANCES, ToleranceConfig
from gkk_tau.errors import ConvergenceError
from gkk_tau.models.matrix import INF, ExtendedReal, Matrix, Spectrum

logger = logging.getLogger(__name__)


def determinant(A: Matrix) -> float:
    """
    det(A) by pivoted LU elimination.

    :param A: Matrix.
    :return : Float.
    :return: Determinant; singular input gives a value near 0.
    """
    return float(np.linalg.det(A.entries))


def batched_determinants(stack: np.ndarray) -> np.ndarray:
    """
    Determinants of a stack of k x k matrices.

    :param stack: Array of shape (m, k, k); k = 0 gives ones.
    :return : ndarray of shape (m,).
    :return: det of every matrix in the stack.
    """
    if stack.shape[-1] == 0:
        return np.ones(stack.shape[0])
    return np.linalg.det(stack)


def exact_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """
    Exact determinant over the rationals by fraction-preserving elimination.

    :param rows: Square array of Fractions.
    :return : Fraction.
    :return: Exact determinant.
    """
    a: List[List[Fraction]] = [list(r) for r in rows]
    k = len(a)
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, k):
            factor = a[r][col] / p
            if factor:
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, k):
                    row_r[c] -= factor * row_c[c]
    return det


def _pair_conjugates(values: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    """Snap near-real values to the axis and make complex pairs exact conjugates."""
    real_mask = np.array([cfg.is_real(z) for z in values], dtype=bool)
    out = [complex(z.real, 0.0) for z in values[real_mask]]
    upper = sorted((z for z in values[~real_mask] if z.imag > 0), key=lambda z: (z.real, z.imag))
    lower = sorted((z.conjugate() for z in values[~real_mask] if z.imag < 0), key=lambda z: (z.real, z.imag))
    if len(upper) != len(lower):
        raise ConvergenceError(
            f"Spectrum is not closed under conjugation ({len(upper)} upper vs {len(lower)} lower values)"
        )
    remaining = list(lower)
    for z in upper:
        j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
        w = remaining.pop(j)
        mid = complex((z.real + w.real) / 2, (z.imag + w.imag) / 2)
        out.extend([mid, mid.conjugate()])
    arr = np.array(out, dtype=complex)
    order = np.lexsort((arr.imag, arr.real))
    return arr[order]


def eigenvalues_of_array(a: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Conjugate-paired eigenvalues of a real square array.

    :param a: Real square array.
    :param cfg: Tolerances.
    :return : ndarray of complex.
    :return: Eigenvalues sorted by (real, imaginary) part.
    """
    if a.shape[0] == 1:
        return np.array([complex(a[0, 0], 0.0)])
    try:
        values = scipy.linalg.eigvals(a, check_finite=False, overwrite_a=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise ConvergenceError(f"Eigenvalue iteration did not converge: {e}") from e
    if not np.all(np.isfinite(values)):
        raise ConvergenceError("Eigenvalue iteration produced non-finite values")
    return _pair_conjugates(values, cfg)


def eigenvalues(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Spectrum:
    """
    Spectrum of A, closed under conjugation.

    :param A: Matrix.
    :param cfg: Tolerances (tol_real decides which values are real).
    :return : Spectrum.
    :return: n eigenvalues to backward-stable accuracy.
    """
    return Spectrum(eigenvalues_of_array(A.entries, cfg))


def min_real_of_values(values: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ExtendedReal:
    """
    Minimum over the real members of a set of eigenvalues.

    :param values: Complex eigenvalues.
    :param cfg: Tolerances.
    :return : ExtendedReal.
    :return: Smallest real eigenvalue, +inf when there is none.
    """
    reals = [z.real for z in values if cfg.is_real(z)]
    return float(min(reals)) if reals else INF


def min_real_eigenvalue(s: Spectrum, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ExtendedReal:
    """
    l(A): smallest real eigenvalue, +inf when the spectrum has none.

    :param s: Spectrum.
    :param cfg: Tolerances.
    :return : ExtendedReal.
    :return: l(A).
    """
    return min_real_of_values(s.values, cfg)


def char_poly(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Coefficients of det(lambda I - A), highest degree first.

    :param A: Matrix.
    :param cfg: Tolerances.
    :return : ndarray of shape (n+1,).
    :return: Monic characteristic polynomial.
    """
    coeffs = np.poly(eigenvalues_of_array(A.entries, cfg))
    return np.real(coeffs).astype(float)
