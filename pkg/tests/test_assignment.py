"""
Unit tests for principal-minor assignment.

:return : Test suite.
:return: Unit tests for hf_feasibility, fit_matrix_to_minors, assignment_residual and the analytic Jacobian.
"""

import math

import numpy as np
import pytest

from gkk_tau.assign import assignment_residual, fit_matrix_to_minors, hf_feasibility
from gkk_tau.assign.fit import residual_jacobian, residual_vector
from gkk_tau.config import FAIL, PASS
from gkk_tau.errors import OrderMismatchError, OrderTooLargeError
from gkk_tau.minors import principal_minor_table
from gkk_tau.models.assignment import FitConfig
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.minors import TargetMinorTable

FEASIBLE = TargetMinorTable.from_mapping(2, {(1,): 2, (2,): 2, (1, 2): 3})
HF_INFEASIBLE = TargetMinorTable.from_mapping(2, {(1,): 1, (2,): 1, (1, 2): 4})


def _targets_of(A: Matrix) -> TargetMinorTable:
    return TargetMinorTable(n=A.n, targets=principal_minor_table(A).values)


def test_hf_feasibility_examples() -> None:
    """
    Test Hadamard-Fischer screening of target tables.

    :return : None.
    :return: Test assertion.
    """
    assert hf_feasibility(FEASIBLE).verdict == PASS

    report = hf_feasibility(HF_INFEASIBLE)
    assert report.verdict == FAIL
    assert report.margin == pytest.approx(-3.0)

    ones = TargetMinorTable(n=3, targets=np.ones(8))
    report = hf_feasibility(ones)
    assert report.verdict == PASS
    assert report.margin == pytest.approx(0.0)
    assert "p_fails" not in report.details

    negative = TargetMinorTable.from_mapping(2, {(1,): -1, (2,): 1, (1, 2): -2})
    assert hf_feasibility(negative).details["nonpositive_masks"] == [1, 3]


def test_assignment_residual_examples() -> None:
    """
    Test the residual against fixed targets.

    :return : None.
    :return: Test assertion.
    """
    assert assignment_residual(Matrix([[2, 1], [1, 2]]), FEASIBLE) == pytest.approx(0.0, abs=1e-12)
    assert assignment_residual(Matrix.identity(2), FEASIBLE) == pytest.approx(math.sqrt(6.0))
    with pytest.raises(OrderMismatchError):
        assignment_residual(Matrix.identity(3), FEASIBLE)


def test_fit_examples() -> None:
    """
    Test fits to small target tables.

    :return : None.
    :return: Test assertion.
    """
    result = fit_matrix_to_minors(FEASIBLE)
    assert result.converged
    assert result.residual <= 1e-8
    assert assignment_residual(result.matrix, FEASIBLE) <= result.tol_fit

    result = fit_matrix_to_minors(TargetMinorTable.from_mapping(1, {(1,): 5}))
    assert result.converged
    assert result.matrix.entries[0, 0] == pytest.approx(5.0)

    # feasible as an assignment although no GKK matrix attains it
    result = fit_matrix_to_minors(HF_INFEASIBLE)
    assert result.converged
    a = result.matrix.entries
    assert a[0, 1] * a[1, 0] == pytest.approx(-3.0, abs=1e-6)


def test_fit_is_independent_of_jobs() -> None:
    """
    Test that concurrent starts give the same reported fit.

    :return : None.
    :return: Test assertion.
    """
    targets = _targets_of(Matrix(np.random.default_rng(12).normal(size=(3, 3))))
    config = FitConfig(starts=4, seed=5)
    serial = fit_matrix_to_minors(targets, config, jobs=1)
    parallel = fit_matrix_to_minors(targets, config, jobs=3)
    assert serial.to_dict() == parallel.to_dict()


def test_fit_order_cap() -> None:
    """
    Test that orders beyond the fit cap are refused.

    :return : None.
    :return: Test assertion.
    """
    with pytest.raises(OrderTooLargeError):
        fit_matrix_to_minors(TargetMinorTable(n=7, targets=np.ones(1 << 7)))


def test_jacobian_matches_finite_differences() -> None:
    """
    Test the analytic Jacobian against central differences.

    :return : None.
    :return: Test assertion.
    """
    rng = np.random.default_rng(0)
    h = 1e-6
    for _ in range(20):
        n = int(rng.integers(1, 5))
        x = rng.normal(size=n * n)
        t = TargetMinorTable(n=n, targets=np.ones(1 << n))
        J = residual_jacobian(x, n)
        assert J.shape == ((1 << n) - 1, n * n)
        numeric = np.empty_like(J)
        for k in range(n * n):
            e = np.zeros(n * n)
            e[k] = h
            numeric[:, k] = (residual_vector(x + e, t) - residual_vector(x - e, t)) / (2 * h)
        assert np.linalg.norm(J - numeric) <= 1e-5 * max(1.0, np.linalg.norm(J))


def test_diagonal_similarity_preserves_residual() -> None:
    """
    Test that D A D^-1 has the residual of A.

    :return : None.
    :return: Test assertion.
    """
    rng = np.random.default_rng(1)
    A = Matrix(rng.normal(size=(4, 4)))
    D = np.diag(rng.uniform(0.5, 2.0, size=4))
    B = Matrix(D @ A.entries @ np.linalg.inv(D))
    targets = TargetMinorTable(n=4, targets=principal_minor_table(Matrix(rng.normal(size=(4, 4)))).values)
    r_a = assignment_residual(A, targets)
    assert assignment_residual(B, targets) == pytest.approx(r_a, rel=1e-8)


def _round_trip(samples: int, max_order: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    converged = 0
    for i in range(samples):
        n = int(rng.integers(2, max_order + 1))
        targets = _targets_of(Matrix(rng.normal(size=(n, n))))
        result = fit_matrix_to_minors(targets, FitConfig(starts=16, seed=i))
        if result.converged and assignment_residual(result.matrix, targets) <= 1e-6:
            converged += 1
    return converged / samples


def test_round_trip_small_orders() -> None:
    """
    Test that fits to extracted tables converge at orders 2 and 3.

    :return : None.
    :return: Test assertion.
    """
    assert _round_trip(10, 3, seed=3) >= 0.9


@pytest.mark.slow
def test_round_trip_full() -> None:
    """
    Test round-trip convergence on a hundred matrices up to order 5.

    :return : None.
    :return: Test assertion.
    """
    assert _round_trip(100, 5, seed=100) >= 0.95
