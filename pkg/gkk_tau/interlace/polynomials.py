"""
Interlacing of real polynomial roots, decided three ways.

roots-direct sorts the roots and compares them, hermite-biehler locates the
roots of p + iq relative to the real axis, and hurwitz decides the same
half-plane question from the leading principal minors of a real Hurwitz
matrix built from the coefficients of p and q alone.

:return : Interlacing certifiers.
:return: interlace_check_roots, hermite_biehler_same_side, hurwitz_interlace, leading_submatrix_interlacing.
"""

from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from gkk_tau.config import DEFAULT_TOLERANCES, FAIL, PASS, UNDEFINED, ToleranceConfig
from gkk_tau.errors import DegeneracyError, DegreeMismatchError
from gkk_tau.minors.engine import char_poly_from_table
from gkk_tau.models.minors import IndexSet, MinorTable
from gkk_tau.models.polynomial import RealPolynomial
from gkk_tau.models.reports import InterlaceReport, Side, roots_to_list

logger = logging.getLogger(__name__)


def _check_degrees(p: RealPolynomial, q: RealPolynomial) -> None:
    if p.degree < 1 or q.degree != p.degree - 1:
        raise DegreeMismatchError(f"Need deg q = deg p - 1 >= 0, got deg p = {p.degree}, deg q = {q.degree}")


def _complex_coeffs(p: RealPolynomial, q: RealPolynomial) -> np.ndarray:
    """Coefficients of p + iq, highest degree first."""
    padded = np.concatenate([[0.0], q.coeffs])
    return p.coeffs + 1j * padded


def interlace_check_roots(
    p: RealPolynomial, q: RealPolynomial, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> InterlaceReport:
    """
    Strict interlacing x_1 < y_1 < x_2 < ... < y_{n-1} < x_n by root comparison.

    A root whose imaginary part lies between tol_real and tol_cluster
    (relative to 1 + |z|) is ambiguous, as is a gap between neighbouring
    roots within tol_cluster; either makes the verdict undefined unless a
    clear violation is present.

    :param p: Polynomial of degree n >= 1.
    :param q: Polynomial of degree n - 1.
    :param cfg: Tolerances.
    :return : InterlaceReport.
    :return: Verdict with both root lists and the gaps.
    """
    _check_degrees(p, q)
    rp, rq = p.roots(), q.roots()
    details: Dict[str, object] = {"p_roots": roots_to_list(rp), "q_roots": roots_to_list(rq)}
    every = np.concatenate([rp, rq])
    ratio = np.abs(every.imag) / (1.0 + np.abs(every))
    if np.any(ratio > cfg.tol_cluster):
        return InterlaceReport(FAIL, "roots-direct", details={**details, "reason": "non-real root"})
    if np.any(ratio > cfg.tol_real):
        return InterlaceReport(UNDEFINED, "roots-direct", details={**details, "reason": "ambiguous realness"})

    x = np.sort(rp.real)
    y = np.sort(rq.real)
    merged = np.empty(x.size + y.size)
    merged[0::2] = x
    merged[1::2] = y
    gaps = np.diff(merged)
    details["gaps"] = [float(g) for g in gaps]
    if gaps.size == 0:
        return InterlaceReport(PASS, "roots-direct", details=details)
    threshold = cfg.tol_cluster * (1.0 + float(np.max(np.abs(merged))))
    if np.any(gaps < -threshold):
        verdict = FAIL
    elif np.any(gaps <= threshold):
        verdict = UNDEFINED
        details["reason"] = "shared or clustered roots"
    else:
        verdict = PASS
    return InterlaceReport(verdict, "roots-direct", details=details)


def hermite_biehler_same_side(
    p: RealPolynomial, q: RealPolynomial, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> InterlaceReport:
    """
    Whether every root of p + iq lies strictly on one side of the real axis.

    :param p: Polynomial of degree n >= 1.
    :param q: Polynomial of degree n - 1.
    :param cfg: Tolerances.
    :return : InterlaceReport.
    :return: Verdict with the side ("upper", "lower" or "mixed").
    """
    _check_degrees(p, q)
    roots = np.roots(_complex_coeffs(p, q))
    details = {"roots": roots_to_list(roots)}
    if any(cfg.is_real(complex(z)) for z in roots):
        return InterlaceReport(UNDEFINED, "hermite-biehler", details={**details, "reason": "root on the real axis"})
    if np.all(roots.imag < 0):
        return InterlaceReport(PASS, "hermite-biehler", side="lower", details=details)
    if np.all(roots.imag > 0):
        return InterlaceReport(PASS, "hermite-biehler", side="upper", details=details)
    return InterlaceReport(FAIL, "hermite-biehler", side="mixed", details=details)


def rotated_coeffs(p: RealPolynomial, q: RealPolynomial) -> np.ndarray:
    """
    Coefficients of w(z) = p(iz) + i q(iz), highest degree first.

    The coefficient of z^k is i^k (p_k + i q_k), so real and imaginary parts
    swap roles with the parity of k.

    :param p: Polynomial of degree n.
    :param q: Polynomial of degree n - 1.
    :return : ndarray of complex, shape (n+1,).
    :return: Coefficients of w.
    """
    f = _complex_coeffs(p, q)[::-1]
    w = f * (1j ** np.arange(f.size))
    return w[::-1]


def doubled_polynomial(w: np.ndarray) -> np.ndarray:
    """
    Real polynomial F = u^2 + v^2 with w = u + iv coefficient-wise.

    F = w * conj(w) has the roots of w and their mirror images in the real
    axis, so F is Hurwitz stable exactly when w is.

    :param w: Complex coefficients, highest degree first.
    :return : ndarray of float.
    :return: Coefficients of F, highest degree first, degree 2 deg w.
    """
    u, v = w.real, w.imag
    return np.polyadd(np.polymul(u, u), np.polymul(v, v))


def hurwitz_matrix(a: np.ndarray) -> np.ndarray:
    """
    Hurwitz matrix H_ij = a_{2j-i} (1-based) of a_0 z^m + ... + a_m.

    :param a: Real coefficients, highest degree first.
    :return : ndarray of shape (m, m).
    :return: The Hurwitz matrix.
    """
    m = a.size - 1
    H = np.zeros((m, m))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            k = 2 * j - i
            if 0 <= k <= m:
                H[i - 1, j - 1] = a[k]
    return H


def balanced_coeffs(a: np.ndarray) -> np.ndarray:
    """
    Coefficients of a(s z) / max, with s chosen so that |a_0| = |a_m|.

    Positive rescaling of z and of the polynomial leaves the half-plane
    location of every root unchanged.

    :param a: Real coefficients, highest degree first.
    :return : ndarray of float.
    :return: Rescaled coefficients with max |coefficient| = 1.
    """
    m = a.size - 1
    lead, const = abs(float(a[0])), abs(float(a[-1]))
    b = np.array(a, dtype=float)
    if m > 0 and lead > 0 and const > 0:
        log_s = (np.log(const) - np.log(lead)) / m
        b = b * np.exp(log_s * np.arange(m, -1, -1))
    return b / np.max(np.abs(b))


def hurwitz_leading_minors(a: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Tuple[str, List[float]]:
    """
    Sign scan of the leading principal minors of the Hurwitz matrix.

    Elimination without pivoting yields the ratios Delta_k / Delta_{k-1}
    as pivots. Alongside, the absolute values of every term that entered
    an entry are accumulated; a pivot within tol_zero of that magnitude
    cannot be told apart from zero. The scan stops at the first such pivot
    ("ambiguous") or the first negative one ("unstable").

    :param a: Real coefficients with a_0 > 0, highest degree first.
    :param cfg: Tolerances.
    :return : Tuple (status, minors).
    :return: "stable", "unstable" or "ambiguous", and Delta_1.. up to where the scan stopped.
    """
    H = hurwitz_matrix(a)
    magnitude = np.abs(H)
    pivots: List[float] = []
    status = "stable"
    for k in range(H.shape[0]):
        pivot = float(H[k, k])
        pivots.append(pivot)
        if abs(pivot) <= cfg.tol_zero * magnitude[k, k]:
            status = "ambiguous"
            break
        if pivot < 0:
            status = "unstable"
            break
        factors = H[k + 1:, k] / pivot
        H[k + 1:, k:] -= np.outer(factors, H[k, k:])
        magnitude[k + 1:, k:] += np.outer(np.abs(factors), magnitude[k, k:])
    return status, [float(x) for x in np.cumprod(pivots)]


def hurwitz_interlace(
    p: RealPolynomial, q: RealPolynomial, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> InterlaceReport:
    """
    Half-plane location of the roots of p + iq from Hurwitz minors.

    w(z) = p(iz) + i q(iz) is doubled to the real polynomial F = u^2 + v^2
    and balanced. Stability of F(z) puts the roots of p + iq below the real
    axis, stability of F(-z) puts them above.

    :param p: Polynomial of degree n >= 1.
    :param q: Polynomial of degree n - 1.
    :param cfg: Tolerances.
    :return : InterlaceReport.
    :return: Verdict, side and the leading minors of the balanced F for both orientations.
    """
    _check_degrees(p, q)
    F = balanced_coeffs(doubled_polynomial(rotated_coeffs(p, q)))
    mirrored = F * (-1.0) ** np.arange(F.size - 1, -1, -1)
    lower, lower_minors = hurwitz_leading_minors(F, cfg)
    upper, upper_minors = hurwitz_leading_minors(mirrored, cfg)
    details = {"lower_minors": lower_minors, "upper_minors": upper_minors}
    logger.debug(f"Hurwitz orientations: lower={lower}, upper={upper}")
    side: Optional[Side] = None
    if lower == "stable":
        side = "lower"
    elif upper == "stable":
        side = "upper"
    if side is not None:
        return InterlaceReport(PASS, "hurwitz", side=side, details=details)
    if lower == "unstable" and upper == "unstable":
        return InterlaceReport(FAIL, "hurwitz", side="mixed", details=details)
    raise DegeneracyError(f"Hurwitz minor within tolerance of zero: {details}")


def leading_submatrix_interlacing(
    t: MinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> List[InterlaceReport]:
    """
    Interlacing of the spectra of A(1:j) within A(1:j+1), j = 1..n-1.

    Both characteristic polynomials come from the minor table, so no matrix
    is needed.

    :param t: Minor table of order n >= 2.
    :param cfg: Tolerances.
    :return : List of InterlaceReport.
    :return: One roots-direct report per j, tagged with j in details.
    """
    reports = []
    for j in range(1, t.n):
        q = RealPolynomial(char_poly_from_table(t, IndexSet.leading(j, t.n)))
        p = RealPolynomial(char_poly_from_table(t, IndexSet.leading(j + 1, t.n)))
        report = interlace_check_roots(p, q, cfg)
        reports.append(InterlaceReport(report.verdict, report.method, report.side, {**report.details, "j": j}))
    return reports
