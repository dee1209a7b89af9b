"""
Class predicates, objectives and seeded class samplers.

A Candidate caches the minor table, spectrum and eigenvalue profile of one
matrix so that a membership test followed by an objective evaluation
computes each of them at most once.

:return : Class plumbing for the search engine.
:return: Candidate, is_member, evaluate_objective, random_matrix_in_class.
"""

from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

from gkk_tau.classify.checks import (
    dispersal_sign_check,
    hadamard_fischer_check,
    m_matrix_check,
    newton_check,
    omega_tau_check,
    p_matrix_check,
    real_spectrum_check,
    stability_check,
    strict_gkk_check,
    varga_cone_check,
)
from gkk_tau.config import DEFAULT_TOLERANCES, FAIL, PASS, ToleranceConfig
from gkk_tau.errors import BudgetExhaustedError
from gkk_tau.linalg.core import eigenvalues, min_real_eigenvalue
from gkk_tau.minors.engine import principal_minor_table
from gkk_tau.models.matrix import ExtendedReal, Matrix, Spectrum
from gkk_tau.models.minors import MinorTable
from gkk_tau.models.reports import ClassReport, OmegaProfile
from gkk_tau.models.search import MatrixClass, Objective
from gkk_tau.parallel import rng_for

logger = logging.getLogger(__name__)

SHIFT_DELTA = 0.05


class Candidate:
    """Lazily computed facts about one matrix."""

    def __init__(self, matrix: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> None:
        self.matrix = matrix
        self.cfg = cfg

    @cached_property
    def table(self) -> MinorTable:
        return principal_minor_table(self.matrix)

    @cached_property
    def spectrum(self) -> Spectrum:
        return eigenvalues(self.matrix, self.cfg)

    @cached_property
    def l(self) -> ExtendedReal:
        return min_real_eigenvalue(self.spectrum, self.cfg)

    @cached_property
    def profile(self) -> OmegaProfile:
        return omega_tau_check(self.matrix, self.cfg)

    @property
    def scale(self) -> float:
        return 1.0 + self.matrix.max_abs()

    def p(self) -> ClassReport:
        return p_matrix_check(self.table, self.cfg)

    def dispersal(self, d: int, strict: bool = False) -> ClassReport:
        return dispersal_sign_check(self.matrix, d, strict, self.cfg)

    def stable(self) -> ClassReport:
        return stability_check(self.spectrum, self.cfg, self.scale)

    def symmetric(self) -> ClassReport:
        a = self.matrix.entries
        i, j = np.unravel_index(int(np.argmax(np.abs(a - a.T))), a.shape)
        margin = -float(abs(a[i, j] - a[j, i]))
        verdict, marginal = self.cfg.judge(margin, scale=self.scale)
        return ClassReport(
            name="symmetric",
            verdict=verdict,
            margin=margin,
            witness={"kind": "entry", "row": int(i) + 1, "col": int(j) + 1},
            checked_count=self.matrix.n**2,
            marginal=marginal,
        )


def _gkk_parts(c: Candidate) -> List[ClassReport]:
    return [c.p(), c.dispersal(1)]


CLASS_PREDICATES: Dict[MatrixClass, Callable[[Candidate], List[ClassReport]]] = {
    MatrixClass.P: lambda c: [c.p()],
    MatrixClass.GKK: _gkk_parts,
    MatrixClass.STRICT_GKK: lambda c: [strict_gkk_check(c.matrix, c.table, c.cfg)],
    MatrixClass.SIGN_SYMMETRIC: lambda c: [c.p(), c.dispersal(c.matrix.n)],
    MatrixClass.OMEGA: lambda c: [c.profile.omega],
    MatrixClass.TAU: lambda c: [c.profile.tau],
    MatrixClass.GKK_TAU: lambda c: _gkk_parts(c) + [c.profile.tau],
    MatrixClass.M_MATRIX: lambda c: [m_matrix_check(c.matrix, c.table, c.cfg)],
    MatrixClass.HPD: lambda c: [c.symmetric(), c.p()],
    MatrixClass.REAL_SPECTRUM: lambda c: [real_spectrum_check(c.spectrum, c.cfg)],
}


def class_reports(matrix_class: MatrixClass, c: Candidate) -> List[ClassReport]:
    """
    Reports that together decide membership, short-circuiting on failure.

    :param matrix_class: Class.
    :param c: Candidate.
    :return : List of ClassReport.
    :return: Component reports, stopping at the first failure.
    """
    reports = []
    for report in CLASS_PREDICATES[matrix_class](c):
        reports.append(report)
        if report.verdict != PASS:
            break
    return reports


def candidate_membership(matrix_class: MatrixClass, c: Candidate, require_stable: bool = False) -> Tuple[bool, bool]:
    """Membership and marginal flag for an already wrapped candidate."""
    reports = class_reports(matrix_class, c)
    member = all(r.verdict == PASS for r in reports)
    if member and require_stable:
        reports.append(c.stable())
        member = reports[-1].verdict == PASS
    return member, any(r.marginal for r in reports)


def is_member(
    matrix_class: MatrixClass, A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> Tuple[bool, bool]:
    """
    Class predicate.

    signSymmetric means a sign-symmetric P-matrix, HPD a symmetric P-matrix
    and realSpectrum a matrix whose eigenvalues are all real.

    :param matrix_class: Class.
    :param A: Matrix.
    :param cfg: Tolerances.
    :return : Tuple (member, marginal).
    :return: Whether A belongs to the class and whether any deciding margin is marginal.
    """
    return candidate_membership(matrix_class, Candidate(A, cfg))


OBJECTIVES: Dict[Objective, Callable[[Candidate], float]] = {
    Objective.MIN_STABILITY_MARGIN: lambda c: c.stable().margin,
    Objective.MIN_VARGA_MARGIN: lambda c: varga_cone_check(c.spectrum, c.l, c.matrix.n, c.cfg, c.scale).margin,
    Objective.MIN_NEWTON_MARGIN: lambda c: newton_check(c.table.c, c.cfg).margin,
    Objective.MIN_STRICT_GKK_MARGIN: lambda c: strict_gkk_check(c.matrix, c.table, c.cfg).margin,
    Objective.MIN_HF_MARGIN: lambda c: hadamard_fischer_check(c.table, c.cfg).margin,
}


def evaluate_objective(objective: Objective, A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """
    Margin of the certifier behind an objective.

    :param objective: Objective.
    :param A: Matrix.
    :param cfg: Tolerances.
    :return : Float.
    :return: The margin; +inf for the Varga cone when l(A) = +inf.
    """
    return OBJECTIVES[objective](Candidate(A, cfg))


def _m_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    off = -rng.uniform(0.0, 1.0, (n, n))
    np.fill_diagonal(off, 0.0)
    diag = np.abs(off).sum(axis=1) + rng.uniform(0.1, 1.0, n)
    return off + np.diag(diag)


def _hpd(rng: np.random.Generator, n: int) -> np.ndarray:
    G = rng.standard_normal((n, n))
    return G @ G.T + 0.1 * np.eye(n)


def _real_spectrum(rng: np.random.Generator, n: int) -> np.ndarray:
    S = np.eye(n) + rng.standard_normal((n, n)) / (2.0 * np.sqrt(n))
    D = np.diag(rng.uniform(-2.0, 2.0, n))
    return S @ D @ np.linalg.inv(S)


def _sign_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    """Positive diagonal scalings D1 S D2 of a symmetric positive definite S."""
    G = rng.standard_normal((n, n))
    S = G @ G.T / n + 0.5 * np.eye(n)
    d1, d2 = rng.uniform(0.5, 2.0, n), rng.uniform(0.5, 2.0, n)
    return d1[:, None] * S * d2[None, :]


def _sign_symmetric_noise(rng: np.random.Generator, n: int) -> np.ndarray:
    signs = np.sign(rng.standard_normal((n, n)))
    signs = np.triu(signs, 1)
    signs = signs + signs.T
    return signs * np.abs(rng.standard_normal((n, n)))


def _mixed_candidate(rng: np.random.Generator, n: int, attempt: int) -> np.ndarray:
    """One draw from a rotating set of candidate families."""
    family = attempt % 4
    noise = rng.uniform(0.05, 0.5)
    if family == 0:
        return _m_matrix(rng, n) + noise * rng.standard_normal((n, n))
    if family == 1:
        return _hpd(rng, n) + noise * rng.standard_normal((n, n))
    diag = np.diag(rng.uniform(0.5, 1.5, n) * (1.0 + noise * n))
    if family == 2:
        return diag + _sign_symmetric_noise(rng, n)
    return diag + rng.standard_normal((n, n))


CONSTRUCTED = {
    MatrixClass.HPD: _hpd,
    MatrixClass.M_MATRIX: _m_matrix,
    MatrixClass.REAL_SPECTRUM: _real_spectrum,
    MatrixClass.SIGN_SYMMETRIC: _sign_symmetric,
}

SHIFT_REPAIRED = (MatrixClass.OMEGA, MatrixClass.TAU, MatrixClass.GKK_TAU)


def sample_member(
    matrix_class: MatrixClass,
    n: int,
    rng: np.random.Generator,
    budget: int,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    require_stable: bool = False,
) -> Matrix:
    """
    Draw a class member from an explicit generator.

    :param matrix_class: Class.
    :param n: Order.
    :param rng: Generator.
    :param budget: Number of candidate draws allowed.
    :param cfg: Tolerances.
    :param require_stable: Also require positive stability.
    :return : Matrix.
    :return: The first candidate passing the class predicate.
    """
    for attempt in range(budget):
        if matrix_class in CONSTRUCTED:
            raw = CONSTRUCTED[matrix_class](rng, n)
        else:
            raw = _mixed_candidate(rng, n, attempt)
        c = Candidate(Matrix(raw), cfg)
        member, _ = candidate_membership(matrix_class, c, require_stable)
        if not member and matrix_class in SHIFT_REPAIRED and np.isfinite(c.l):
            # shifting moves every l(A(alpha)) by the same amount
            c = Candidate(c.matrix.shifted(-c.l + SHIFT_DELTA), cfg)
            member, _ = candidate_membership(matrix_class, c, require_stable)
        if member:
            logger.debug(f"Sampled {matrix_class.value} member of order {n} after {attempt + 1} draws")
            return c.matrix
    raise BudgetExhaustedError(
        f"No {matrix_class.value} member of order {n} found within {budget} draws"
    )


def random_matrix_in_class(
    matrix_class: MatrixClass,
    n: int,
    seed: int,
    budget: int = 2000,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    require_stable: bool = False,
) -> Matrix:
    """
    Seeded member of a class.

    HPD, M, signSymmetric and realSpectrum members are constructed directly; the other
    classes are sampled by rejection over mixed candidate families, with a
    diagonal shift repairing the sign of l for the omega and tau composites.

    :param matrix_class: Class.
    :param n: Order.
    :param seed: Seed.
    :param budget: Number of candidate draws allowed.
    :param cfg: Tolerances.
    :param require_stable: Also require positive stability.
    :return : Matrix.
    :return: A matrix passing the class predicate.
    """
    return sample_member(matrix_class, n, rng_for(seed), budget, cfg, require_stable)
