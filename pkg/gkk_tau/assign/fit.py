"""
Principal-minor assignment: feasibility screening and least-squares fitting.

:return : Assignment operations.
:return: hf_feasibility, fit_matrix_to_minors, assignment_residual, residual_vector, residual_jacobian.
"""

from typing import List, Tuple
import logging

import numpy as np
from scipy.optimize import least_squares

from gkk_tau.classify.checks import hadamard_fischer_check
from gkk_tau.config import DEFAULT_TOLERANCES, ToleranceConfig
from gkk_tau.errors import OrderMismatchError, OrderTooLargeError
from gkk_tau.minors.engine import gather_submatrices, masks_of_size, positions_array, principal_minor_table
from gkk_tau.models.assignment import AssignmentResult, FitConfig
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.minors import TargetMinorTable
from gkk_tau.models.reports import ClassReport
from gkk_tau.parallel import parallel_map, rng_for

logger = logging.getLogger(__name__)

MAX_FIT_ORDER = 6
LSQ_TOL = 1e-15


def hf_feasibility(t: TargetMinorTable, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ClassReport:
    """
    Hadamard-Fischer screening of prescribed minors.

    A failing report certifies that no GKK matrix attains the targets.
    Nonpositive targets are noted, since then no P-matrix attains them.

    :param t: Target table.
    :param cfg: Tolerances.
    :return : ClassReport.
    :return: The Hadamard-Fischer report on the targets, renamed hf-feasibility.
    """
    report = hadamard_fischer_check(t.as_table(), cfg)
    nonpositive = [int(m) for m in np.flatnonzero(t.targets[1:] <= 0) + 1]
    details = dict(report.details)
    if nonpositive:
        details["p_fails"] = True
        details["nonpositive_masks"] = nonpositive
    return ClassReport(
        name="hf-feasibility",
        verdict=report.verdict,
        margin=report.margin,
        witness=report.witness,
        checked_count=report.checked_count,
        marginal=report.marginal,
        details=details,
    )


def assignment_residual(A: Matrix, t: TargetMinorTable) -> float:
    """
    Root-sum-square of A[alpha] - p_alpha over nonempty alpha.

    :param A: Matrix.
    :param t: Target table of the same order.
    :return : Float.
    :return: The residual.
    """
    if A.n != t.n:
        raise OrderMismatchError(f"Matrix of order {A.n} against targets of order {t.n}")
    values = principal_minor_table(A).values
    return float(np.sqrt(np.sum((values[1:] - t.targets[1:]) ** 2)))


def residual_vector(x: np.ndarray, t: TargetMinorTable) -> np.ndarray:
    """
    A[alpha] - p_alpha for alpha = 1..2^n - 1, A = x reshaped row-major.

    :param x: Flattened entries.
    :param t: Targets.
    :return : ndarray of shape (2^n - 1,).
    :return: Residual vector.
    """
    n = t.n
    values = principal_minor_table(Matrix(x.reshape(n, n))).values
    return values[1:] - t.targets[1:]


def _cofactors(stack: np.ndarray) -> np.ndarray:
    """Signed cofactors of a stack of k x k matrices."""
    m, k, _ = stack.shape
    if k == 1:
        return np.ones((m, 1, 1))
    out = np.empty_like(stack)
    idx = np.arange(k)
    for i in range(k):
        rows = idx[idx != i]
        for j in range(k):
            cols = idx[idx != j]
            out[:, i, j] = (-1.0) ** (i + j) * np.linalg.det(stack[:, rows[:, None], cols[None, :]])
    return out


def residual_jacobian(x: np.ndarray, n: int) -> np.ndarray:
    """
    Derivatives of every principal minor with respect to every entry.

    d A[alpha] / d a_ij is the signed cofactor of (i, j) within A(alpha)
    when i and j both lie in alpha, and 0 otherwise.

    :param x: Flattened entries.
    :param n: Order.
    :return : ndarray of shape (2^n - 1, n^2).
    :return: Jacobian of residual_vector.
    """
    a = x.reshape(n, n)
    J = np.zeros(((1 << n) - 1, n * n))
    for k in range(1, n + 1):
        masks = masks_of_size(n, k)
        pos = positions_array(masks, k)
        cof = _cofactors(gather_submatrices(a, pos, pos))
        rows = masks - 1
        for i in range(k):
            for j in range(k):
                J[rows, pos[:, i] * n + pos[:, j]] = cof[:, i, j]
    return J


def _start(t: TargetMinorTable, index: int, config: FitConfig) -> np.ndarray:
    """Perturbed diagonal start diag(p_1..p_n) + noise, keyed by index."""
    n = t.n
    singles = np.array([t.targets[1 << i] for i in range(n)])
    scale = max(1.0, float(np.mean(np.abs(singles))))
    rng = rng_for(config.seed, index)
    return (np.diag(singles) + config.noise * scale * rng.standard_normal((n, n))).reshape(-1)


def _run_start(t: TargetMinorTable, index: int, config: FitConfig) -> Tuple[np.ndarray, float]:
    n = t.n
    max_nfev = config.max_nfev if config.max_nfev is not None else 200 * n * n
    fit = least_squares(
        residual_vector,
        _start(t, index, config),
        jac=lambda x, *_: residual_jacobian(x, n),
        method="trf",
        args=(t,),
        max_nfev=max_nfev,
        xtol=LSQ_TOL,
        ftol=LSQ_TOL,
        gtol=LSQ_TOL,
    )
    residual = float(np.linalg.norm(residual_vector(fit.x, t)))
    logger.debug(f"Start {index}: residual {residual:.3e} after {fit.nfev} evaluations ({fit.message})")
    return fit.x, residual


def fit_matrix_to_minors(
    t: TargetMinorTable, config: FitConfig = FitConfig(), jobs: int = 1
) -> AssignmentResult:
    """
    Fit a matrix to prescribed principal minors by multi-start least squares.

    Starts run in batches of size jobs. The first start (by index) that
    reaches tol_fit is reported; if none does, the start with the smallest
    residual is. Either way the result does not depend on jobs.

    :param t: Target table, order <= 6.
    :param config: Fit configuration.
    :param jobs: Concurrent starts.
    :return : AssignmentResult.
    :return: Best matrix, residual, convergence flag and starts used.
    """
    n = t.n
    if n > MAX_FIT_ORDER:
        raise OrderTooLargeError(f"Minor fitting is capped at order {MAX_FIT_ORDER}, got {n}")
    tol_fit = config.tol_fit if config.tol_fit is not None else 1e-8 * (1.0 + t.max_abs())
    batch = max(jobs, 1)
    outcomes: List[Tuple[np.ndarray, float]] = []
    winner = None
    for first in range(0, config.starts, batch):
        indices = range(first, min(first + batch, config.starts))
        outcomes.extend(parallel_map(lambda i: _run_start(t, i, config), indices, jobs))
        converged = [i for i, (_, r) in enumerate(outcomes) if r <= tol_fit]
        if converged:
            winner = converged[0]
            break
        logger.info(f"Fitted {len(outcomes)}/{config.starts} starts, best residual {min(r for _, r in outcomes):.3e}")

    if winner is not None:
        outcomes = outcomes[: winner + 1]
        starts_used = winner + 1
    else:
        winner = int(np.argmin([r for _, r in outcomes]))
        starts_used = config.starts
    x, residual = outcomes[winner]
    result = AssignmentResult(
        matrix=Matrix(x.reshape(n, n)),
        residual=residual,
        converged=residual <= tol_fit,
        starts_used=starts_used,
        tol_fit=tol_fit,
        start_residuals=[r for _, r in outcomes],
    )
    logger.info(
        f"Minor fit {'converged' if result.converged else 'did not converge'}: "
        f"residual {residual:.3e} (tol {tol_fit:.1e}) using {starts_used} starts"
    )
    return result
