"""
Property-based tests for the minor engine and certifiers.

:return : Test suite.
:return: Hypothesis properties over random small matrices.
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from gkk_tau.classify.checks import (
    dispersal_sign_check,
    newton_check,
    omega_tau_check,
    p_matrix_check,
    stability_check,
    varga_cone_check,
)
from gkk_tau.config import PASS
from gkk_tau.linalg import determinant, eigenvalues, min_real_eigenvalue
from gkk_tau.minors import char_poly_from_table, dispersal, principal_minor_table
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.minors import IndexSet

entry = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)

# square matrices of order 1-5
matrix_strategy = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=60, deadline=None)
@given(matrix_strategy)
def test_table_corners(rows) -> None:
    """
    Test that the table holds 1, the diagonal and the determinant.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix(rows)
    t = principal_minor_table(A)
    assert t.values[0] == 1.0
    for i in range(A.n):
        assert t.values[1 << i] == A.entries[i, i]
    scale = max(1.0, np.prod(np.maximum(np.linalg.norm(A.entries, axis=1), 1.0)))
    assert abs(t.values[-1] - determinant(A)) <= 1e-9 * scale


@settings(max_examples=60, deadline=None)
@given(matrix_strategy, st.randoms(use_true_random=False))
def test_permutation_similarity_preserves_p_margin(rows, rnd) -> None:
    """
    Test that relabelling indices permutes the table without changing its minimum.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix(rows)
    perm = list(range(A.n))
    rnd.shuffle(perm)
    B = Matrix(A.entries[np.ix_(perm, perm)])
    a, b = p_matrix_check(principal_minor_table(A)), p_matrix_check(principal_minor_table(B))
    scale = max(1.0, (1.0 + A.max_abs()) ** A.n)
    assert abs(a.margin - b.margin) <= 1e-9 * scale


@settings(max_examples=40, deadline=None)
@given(matrix_strategy)
def test_transpose_preserves_dispersal_products(rows) -> None:
    """
    Test that the sign condition reads the same on A and its transpose.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix(rows)
    a = dispersal_sign_check(A, A.n)
    b = dispersal_sign_check(Matrix(A.entries.T), A.n)
    scale = max(1.0, (1.0 + A.max_abs()) ** (2 * A.n))
    assert a.checked_count == b.checked_count
    if a.checked_count:
        assert abs(a.margin - b.margin) <= 1e-9 * scale


@settings(max_examples=60, deadline=None)
@given(matrix_strategy)
def test_symmetric_matrices_satisfy_newton(rows) -> None:
    """
    Test Newton's inequalities on the symmetric part of a random matrix.

    :return : None.
    :return: Test assertion.
    """
    a = np.array(rows, dtype=float)
    report = newton_check(principal_minor_table(Matrix(a + a.T)).c)
    assert report.margin >= -1e-10 * report.details["scale"]


@settings(max_examples=60, deadline=None)
@given(matrix_strategy)
def test_spectrum_closed_under_conjugation(rows) -> None:
    """
    Test that non-real eigenvalues come in exact conjugate pairs.

    :return : None.
    :return: Test assertion.
    """
    values = eigenvalues(Matrix(rows)).values
    upper = sorted((z for z in values if z.imag > 0), key=lambda z: (z.real, z.imag))
    lower = sorted((z.conjugate() for z in values if z.imag < 0), key=lambda z: (z.real, z.imag))
    assert upper == lower
    assert len(values) == len(rows)


@given(
    st.integers(min_value=1, max_value=8).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))
    )
)
def test_dispersal_is_symmetric(args) -> None:
    """
    Test that dispersal does not depend on argument order for equal sizes.

    :return : None.
    :return: Test assertion.
    """
    n, x, y = args
    alpha, beta = IndexSet(x, n), IndexSet(y, n)
    if alpha.size == beta.size:
        assert dispersal(alpha, beta) == dispersal(beta, alpha)
        assert 0 <= dispersal(alpha, beta) <= alpha.size


def _gaussian(args) -> Matrix:
    n, seed = args
    return Matrix(np.random.default_rng(seed).standard_normal((n, n)))


def _diagonally_scaled_symmetric(args) -> Matrix:
    n, seed = args
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n))
    return Matrix(np.diag(rng.uniform(0.2, 2.0, n)) @ (g + g.T) / 2.0)


def _well_separated(values: np.ndarray) -> bool:
    gaps = np.abs(values[:, None] - values[None, :]) + np.eye(len(values))
    near_axis = (np.abs(values.imag) > 1e-12) & (np.abs(values.imag) < 1e-4)
    return bool(np.all(gaps > 1e-3) and not np.any(near_axis))


def _row_scale(A: Matrix) -> float:
    return float(max(1.0, np.prod(np.maximum(np.linalg.norm(A.entries, axis=1), 1.0))))


seeds = st.integers(min_value=0, max_value=2**32 - 1)
gaussian_strategy = st.tuples(st.integers(min_value=1, max_value=5), seeds).map(_gaussian)
scaled_symmetric_strategy = st.tuples(st.integers(min_value=1, max_value=4), seeds).map(_diagonally_scaled_symmetric)
shifts = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(gaussian_strategy, shifts)
def test_shift_moves_l_by_the_shift(A, t) -> None:
    """
    Test l(A + tI) = l(A) + t.

    :return : None.
    :return: Test assertion.
    """
    assume(_well_separated(np.linalg.eigvals(A.entries)))
    before = min_real_eigenvalue(eigenvalues(A))
    after = min_real_eigenvalue(eigenvalues(A.shifted(t)))
    if np.isinf(before):
        assert np.isinf(after)
    else:
        assert abs(after - (before + t)) <= 1e-8 * (1.0 + A.max_abs() + abs(t))


@settings(max_examples=60, deadline=None)
@given(gaussian_strategy)
def test_determinant_is_product_of_eigenvalues(A) -> None:
    """
    Test det(A) = product of the eigenvalues.

    :return : None.
    :return: Test assertion.
    """
    product = np.prod(eigenvalues(A).values)
    assert abs(product.imag) <= 1e-9 * _row_scale(A)
    assert abs(product.real - determinant(A)) <= 1e-9 * _row_scale(A)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(gaussian_strategy)
def test_eigenvalues_are_roots_of_table_char_poly(A) -> None:
    """
    Test that the characteristic polynomial rebuilt from minors vanishes on the spectrum.

    :return : None.
    :return: Test assertion.
    """
    assume(_well_separated(np.linalg.eigvals(A.entries)))
    coeffs = char_poly_from_table(principal_minor_table(A), IndexSet((1 << A.n) - 1, A.n))
    for z in eigenvalues(A).values:
        residual = abs(np.polyval(coeffs, z))
        assert residual <= 1e-8 * _row_scale(A) * max(1.0, abs(z)) ** A.n


@settings(max_examples=40, deadline=None)
@given(gaussian_strategy)
def test_dispersal_condition_is_monotone_in_d(A) -> None:
    """
    Test that raising the dispersal bound only adds conditions.

    :return : None.
    :return: Test assertion.
    """
    reports = [dispersal_sign_check(A, d) for d in range(1, A.n + 1)]
    for smaller, larger in zip(reports, reports[1:]):
        assert larger.checked_count >= smaller.checked_count
        assert larger.margin <= smaller.margin + 1e-12
        if larger.verdict == PASS:
            assert smaller.verdict == PASS


@settings(max_examples=60, deadline=None)
@given(
    st.tuples(st.integers(min_value=3, max_value=5), seeds).map(_gaussian),
    st.floats(min_value=0.1, max_value=3, allow_nan=False, allow_infinity=False),
)
def test_varga_cone_with_positive_apex_implies_stability(A, apex) -> None:
    """
    Test that a cone condition holding with room to spare and l(A) > 0 gives stability.

    :return : None.
    :return: Test assertion.
    """
    assume(_well_separated(np.linalg.eigvals(A.entries)))
    l = min_real_eigenvalue(eigenvalues(A))
    assume(np.isfinite(l))
    B = A.shifted(apex - l)
    s = eigenvalues(B)
    scale = 1.0 + B.max_abs()
    varga = varga_cone_check(s, min_real_eigenvalue(s), B.n, scale=scale)
    if varga.verdict == PASS and varga.margin > 1e-9:
        assert stability_check(s, scale=scale).verdict == PASS


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(scaled_symmetric_strategy, shifts)
def test_tau_verdict_follows_shifts(A, t) -> None:
    """
    Test that shifts keep omega and move tau with the sign of l(A) + t.

    :return : None.
    :return: Test assertion.
    """
    for mask in range(1, 1 << A.n):
        pos = IndexSet(mask, A.n).positions()
        assume(_well_separated(np.linalg.eigvals(A.entries[np.ix_(pos, pos)])))
    before = omega_tau_check(A)
    after = omega_tau_check(A.shifted(t))
    l_full = before.l_values[(1 << A.n) - 1]
    assume(abs(before.omega.margin) > 1e-6 and abs(l_full + t) > 1e-6)

    assert after.omega.verdict == before.omega.verdict
    assert (after.tau.verdict == PASS) == (before.omega.verdict == PASS and l_full + t > 0)
    for mask, value in before.l_values.items():
        assert after.l_values[mask] == pytest.approx(value + t, abs=1e-8 * (1.0 + A.max_abs() + abs(t)))
