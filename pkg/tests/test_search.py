"""
Unit tests for class samplers, hill descent and the frontier survey.

:return : Test suite.
:return: Unit tests for random_matrix_in_class, extremal_search, approximate_by_strict_gkk, dispersal_profile and class_frontier_survey.
"""

import numpy as np
import pytest

from gkk_tau.classify import classify
from gkk_tau.classify.checks import newton_check
from gkk_tau.config import FAIL, PASS
from gkk_tau.errors import BudgetExhaustedError, ConfigError
from gkk_tau.minors import principal_minor_table
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.search import MatrixClass, Objective, SearchConfig, SurveyConfig, parse_class
from gkk_tau.search import (
    approximate_by_strict_gkk,
    class_frontier_survey,
    dispersal_profile,
    evaluate_objective,
    extremal_search,
    is_member,
    random_matrix_in_class,
)
from gkk_tau.search.frontier import SURVEY_COLUMNS


def test_hpd_sampler_passes_classifier() -> None:
    """
    Test that sampled HPD matrices are P, GKK, tau and stable.

    :return : None.
    :return: Test assertion.
    """
    labels = classify(random_matrix_in_class(MatrixClass.HPD, 5, seed=7)).labels
    assert labels["P"] and labels["GKK"] and labels["tau"] and labels["stable"]


def test_m_matrix_sampler_passes_classifier() -> None:
    """
    Test that sampled M-matrices are M, GKK, tau and stable.

    :return : None.
    :return: Test assertion.
    """
    labels = classify(random_matrix_in_class(MatrixClass.M_MATRIX, 6, seed=1)).labels
    assert labels["M"] and labels["GKK"] and labels["tau"] and labels["stable"]


@pytest.mark.parametrize(
    "matrix_class",
    [
        MatrixClass.P,
        MatrixClass.GKK,
        MatrixClass.TAU,
        MatrixClass.GKK_TAU,
        MatrixClass.REAL_SPECTRUM,
        MatrixClass.SIGN_SYMMETRIC,
    ],
)
def test_sampled_members_satisfy_their_class(matrix_class: MatrixClass) -> None:
    """
    Test that every sampled matrix passes its own class predicate.

    :param matrix_class: Class sampled.
    :return : None.
    :return: Test assertion.
    """
    A = random_matrix_in_class(matrix_class, 3, seed=5)
    assert is_member(matrix_class, A)[0]


@pytest.mark.parametrize("n", [6, 7])
def test_sign_symmetric_sampler_large_orders(n: int) -> None:
    """
    Test that sign-symmetric members are built directly at larger orders.

    :param n: Matrix order.
    :return : None.
    :return: Test assertion.
    """
    for seed in range(5):
        A = random_matrix_in_class(MatrixClass.SIGN_SYMMETRIC, n, seed=seed)
        assert is_member(MatrixClass.SIGN_SYMMETRIC, A)[0]
        assert not np.allclose(A.entries, A.entries.T)


def test_sampler_is_deterministic() -> None:
    """
    Test that the same seed gives the same matrix.

    :return : None.
    :return: Test assertion.
    """
    a = random_matrix_in_class(MatrixClass.GKK, 4, seed=3)
    b = random_matrix_in_class(MatrixClass.GKK, 4, seed=3)
    assert a == b
    assert a != random_matrix_in_class(MatrixClass.GKK, 4, seed=4)


def test_budget_exhaustion(monkeypatch: pytest.MonkeyPatch) -> None:
    """
    Test that an exhausted rejection budget raises.

    :return : None.
    :return: Test assertion.
    """
    monkeypatch.setattr(
        "gkk_tau.search.classes.candidate_membership", lambda *args, **kwargs: (False, False)
    )
    with pytest.raises(BudgetExhaustedError):
        random_matrix_in_class(MatrixClass.GKK_TAU, 4, seed=0, budget=3)


def test_unknown_class_tag() -> None:
    """
    Test that unknown class tags are configuration errors.

    :return : None.
    :return: Test assertion.
    """
    assert parse_class("GKKtau") == MatrixClass.GKK_TAU
    with pytest.raises(ConfigError):
        parse_class("Q")
    with pytest.raises(ConfigError):
        SearchConfig(n=3, iterations=0)


def test_evaluate_objective() -> None:
    """
    Test objective values on a fixed matrix.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix([[2, 1], [1, 2]])
    assert evaluate_objective(Objective.MIN_STABILITY_MARGIN, A) == pytest.approx(1.0)
    assert evaluate_objective(Objective.MIN_NEWTON_MARGIN, A) == pytest.approx(1.0)
    assert evaluate_objective(Objective.MIN_HF_MARGIN, A) == pytest.approx(1.0)


def test_tau_varga_search_finds_no_violation() -> None:
    """
    Test that a short descent on order-3 tau-matrices keeps the cone condition.

    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=3, seed=11, iterations=300, restarts=2, trace_every=25)
    result = extremal_search(MatrixClass.TAU, Objective.MIN_VARGA_MARGIN, config)
    assert result.best_objective >= -1e-8
    assert is_member(MatrixClass.TAU, result.best)[0]
    assert result.membership_audit["labels"]["tau"]
    assert len(result.restart_objectives) == 2
    assert result.best_objective == min(result.restart_objectives)


def test_sign_symmetric_search_stays_stable() -> None:
    """
    Test that sign-symmetric P-matrices found by descent remain stable.

    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=3, seed=2, iterations=200)
    result = extremal_search(MatrixClass.SIGN_SYMMETRIC, Objective.MIN_STABILITY_MARGIN, config)
    assert result.best_objective > 0
    assert result.membership_audit["reports"]["stable"]["verdict"] == PASS


def test_trace_is_monotone_and_sampled() -> None:
    """
    Test that the best-so-far trace never increases.

    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=3, seed=4, iterations=200, trace_every=20)
    result = extremal_search(MatrixClass.M_MATRIX, Objective.MIN_STABILITY_MARGIN, config)
    assert len(result.trace) == 1 + 200 // 20
    assert all(b <= a for a, b in zip(result.trace, result.trace[1:]))
    assert result.trace[-1] == result.best_objective
    assert result.best.max_abs() == pytest.approx(1.0)


def test_search_is_deterministic_across_jobs() -> None:
    """
    Test byte-identical results for equal seeds, whatever the worker count.

    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=3, seed=9, iterations=100, restarts=3)
    first = extremal_search(MatrixClass.GKK_TAU, Objective.MIN_NEWTON_MARGIN, config, jobs=1)
    second = extremal_search(MatrixClass.GKK_TAU, Objective.MIN_NEWTON_MARGIN, config, jobs=3)
    assert first.to_dict() == second.to_dict()


def test_real_spectrum_walk_respects_newton() -> None:
    """
    Test that a walk over real-spectrum matrices never violates Newton's inequalities.

    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=4, seed=6, iterations=200)
    result = extremal_search(MatrixClass.REAL_SPECTRUM, Objective.MIN_NEWTON_MARGIN, config)
    report = newton_check(principal_minor_table(result.best).c)
    assert result.best_objective == pytest.approx(report.margin)
    assert report.margin >= -1e-10 * report.details["scale"]


def test_approximation_examples() -> None:
    """
    Test strict-GKK proximity on fixed matrices.

    :return : None.
    :return: Test assertion.
    """
    result = approximate_by_strict_gkk(Matrix([[2, 1], [1, 2]]), 0.1)
    assert result.found
    assert result.distance == 0.0
    assert result.evaluations == 1

    result = approximate_by_strict_gkk(Matrix.identity(3), 0.5)
    assert result.found
    assert 0 < result.distance <= 0.5
    assert result.audit["labels"]["strictGKK"]

    result = approximate_by_strict_gkk(Matrix([[1, -2], [2, 1]]), 0.01, seed=3, iterations=200)
    assert not result.found
    assert result.distance <= 0.01
    assert result.best_margin < 0


@pytest.mark.parametrize("epsilon", [0.01, 0.03, 0.1])
def test_approximation_stays_inside_the_ball(epsilon: float) -> None:
    """
    Test that the reported distance never exceeds epsilon, even by rounding.

    :param epsilon: Ball radius.
    :return : None.
    :return: Test assertion.
    """
    for A in (Matrix([[1, -2], [2, 1]]), Matrix([[0.7, -1.3, 0.2], [1.1, 0.3, -0.9], [0.4, 0.8, 0.6]])):
        result = approximate_by_strict_gkk(A, epsilon, seed=1, iterations=100)
        assert result.distance <= epsilon
        assert A.distance(result.best) == result.distance


def test_approximation_with_tau() -> None:
    """
    Test that requiring tau keeps the witness a tau-matrix.

    :return : None.
    :return: Test assertion.
    """
    result = approximate_by_strict_gkk(Matrix.identity(3), 0.5, require_tau=True)
    assert result.found
    assert result.audit["labels"]["tau"]


def test_dispersal_profile_examples() -> None:
    """
    Test per-d sign conditions on fixed matrices.

    :return : None.
    :return: Test assertion.
    """
    profile = dispersal_profile(Matrix([[2, 1], [1, 2]]))
    assert [e["verdict"] for e in profile.entries] == [PASS, PASS]
    assert profile.largest_d == 2
    assert profile.stable == PASS

    profile = dispersal_profile(Matrix([[1, -2], [2, 1]]))
    assert profile.entries[0]["verdict"] == FAIL
    assert profile.largest_d == 0

    profile = dispersal_profile(Matrix.identity(4))
    assert profile.largest_d == 4
    assert all(e["margin"] == 0.0 for e in profile.entries)
    assert list(profile.to_frame()["d"]) == [1, 2, 3, 4]


def test_frontier_survey() -> None:
    """
    Test a small survey of M-matrices.

    :return : None.
    :return: Test assertion.
    """
    config = SurveyConfig(matrix_class=MatrixClass.M_MATRIX, orders=(2, 3), samples=5, seed=1)
    frame = class_frontier_survey(config)
    assert list(frame.columns) == SURVEY_COLUMNS
    assert list(frame["order"]) == [2, 3]
    assert list(frame["members"]) == [5, 5]
    assert list(frame["stable"]) == [5, 5]
    assert (frame["min_stability_margin"] > 0).all()

    parallel = class_frontier_survey(config, jobs=2)
    assert frame.equals(parallel)


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
def test_tau_varga_search_full(n: int) -> None:
    """
    Test the cone condition under a long descent on tau-matrices of order up to 4.

    :param n: Order.
    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=n, seed=n, iterations=100000, restarts=8)
    result = extremal_search(MatrixClass.TAU, Objective.MIN_VARGA_MARGIN, config, jobs=4)
    assert result.best_objective >= -1e-12 * (1 + result.best.max_abs())
    again = extremal_search(MatrixClass.TAU, Objective.MIN_VARGA_MARGIN, config, jobs=2)
    assert result.to_dict() == again.to_dict()


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sign_symmetric_search_full(n: int) -> None:
    """
    Test stability under a long descent on sign-symmetric P-matrices.

    :param n: Order.
    :return : None.
    :return: Test assertion.
    """
    config = SearchConfig(n=n, seed=n, iterations=100000)
    result = extremal_search(MatrixClass.SIGN_SYMMETRIC, Objective.MIN_STABILITY_MARGIN, config)
    assert result.best_objective > 0


@pytest.mark.slow
def test_stable_class_oracle() -> None:
    """
    Test that HPD and M-matrix samples pass P, GKK, omega, tau and stability.

    :return : None.
    :return: Test assertion.
    """
    for matrix_class in (MatrixClass.HPD, MatrixClass.M_MATRIX):
        for seed in range(500):
            labels = classify(random_matrix_in_class(matrix_class, 2 + seed % 7, seed=seed)).labels
            assert all(labels[k] for k in ("P", "GKK", "omega", "tau", "stable")), (matrix_class, seed)
