"""
Unit tests for the minor engine.

:return : Test suite.
:return: Unit tests for minor tables, dispersal pairs and mean minor sums.
"""

from math import comb

import numpy as np
import pytest

from gkk_tau.errors import OrderTooLargeError, SizeMismatchError
from gkk_tau.linalg import char_poly, determinant
from gkk_tau.minors import (
    char_poly_from_table,
    dispersal,
    dispersal_pair_arrays,
    mean_minor_sums,
    minor,
    pairs_with_dispersal,
    principal_minor_table,
)
from gkk_tau.minors.engine import estimate_pair_count, minor_products
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.minors import IndexSet


def _set(n: int, *members: int) -> IndexSet:
    return IndexSet.from_members(members, n)


def test_identity_table() -> None:
    """
    Test that every principal minor of the identity is 1.

    :return : None.
    :return: Test assertion.
    """
    t = principal_minor_table(Matrix.identity(3))
    assert len(t) == 8
    np.testing.assert_allclose(t.values, np.ones(8))


def test_two_by_two_table() -> None:
    """
    Test the table and mean sums of [[2,1],[1,2]].

    :return : None.
    :return: Test assertion.
    """
    t = principal_minor_table(Matrix([[2, 1], [1, 2]]))
    np.testing.assert_allclose(t.values, [1, 2, 2, 3])
    np.testing.assert_allclose(t.c, [1, 2, 3])
    assert t[_set(2, 1, 2)] == pytest.approx(3.0)


def test_exact_mode_matches_float() -> None:
    """
    Test that rational elimination agrees with LU on an integer matrix.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix([[4, -1, 2], [1, 3, 0], [-2, 1, 5]])
    exact = principal_minor_table(A, mode="exact")
    approx = principal_minor_table(A)
    assert exact.mode == "exact"
    np.testing.assert_allclose(exact.values, approx.values, rtol=1e-12)


def test_table_size_and_jobs() -> None:
    """
    Test the 2^n entry count and independence from the worker count.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix(np.random.default_rng(3).normal(size=(6, 6)))
    serial = principal_minor_table(A)
    parallel = principal_minor_table(A, jobs=2)
    assert len(serial) == 64
    assert np.array_equal(serial.values, parallel.values)
    assert serial.values[-1] == pytest.approx(determinant(A))


def test_table_cap() -> None:
    """
    Test that orders beyond the table cap are refused.

    :return : None.
    :return: Test assertion.
    """
    with pytest.raises(OrderTooLargeError):
        principal_minor_table(Matrix.identity(21))


def test_minor_examples() -> None:
    """
    Test general minors including the full one.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix([[2, 1], [1, 2]])
    assert minor(A, _set(2, 1), _set(2, 2)) == pytest.approx(1.0)
    assert minor(Matrix.identity(3), _set(3, 1, 2), _set(3, 2, 3)) == pytest.approx(0.0)
    assert minor(A, IndexSet.full(2), IndexSet.full(2)) == pytest.approx(3.0)

    with pytest.raises(SizeMismatchError):
        minor(A, _set(2, 1), _set(2, 1, 2))


def test_dispersal_examples() -> None:
    """
    Test dispersal of fixed pairs.

    :return : None.
    :return: Test assertion.
    """
    assert dispersal(_set(4, 1, 2), _set(4, 2, 3)) == 1
    assert dispersal(_set(4, 1, 3), _set(4, 1, 3)) == 0
    assert dispersal(_set(4, 1, 2), _set(4, 3, 4)) == 2
    assert dispersal(_set(4, 2, 3), _set(4, 1, 2)) == 1


def test_pair_counts() -> None:
    """
    Test pair enumeration counts at order 3.

    :return : None.
    :return: Test assertion.
    """
    ones = list(pairs_with_dispersal(3, 1))
    assert len(ones) == 6
    assert sum(1 for p in ones if p.alpha.size == 1) == 3
    assert len(list(pairs_with_dispersal(3, 0))) == 7
    assert len(list(pairs_with_dispersal(3, 2))) == 0


def test_pairs_are_canonical_and_sorted() -> None:
    """
    Test that pairs come smaller mask first in ascending order.

    :return : None.
    :return: Test assertion.
    """
    pairs = list(pairs_with_dispersal(4, 2, mode="at-most"))
    keys = [(p.alpha.mask, p.beta.mask) for p in pairs]
    assert keys == sorted(keys)
    assert all(p.alpha.mask <= p.beta.mask for p in pairs)
    assert all(dispersal(p.alpha, p.beta) == p.d for p in pairs)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_pair_count_estimate(n: int) -> None:
    """
    Test the closed-form pair count against enumeration.

    :param n: Order.
    :return : None.
    :return: Test assertion.
    """
    for d in range(1, n + 1):
        enumerated = sum(1 for p in pairs_with_dispersal(n, d, mode="at-most") if p.d >= 1)
        assert estimate_pair_count(n, d) == enumerated


def _brute_force_pairs(n: int, d: int) -> list:
    pairs = []
    for alpha in range(1, 1 << n):
        for beta in range(alpha, 1 << n):
            k = bin(alpha).count("1")
            if bin(beta).count("1") == k and k - bin(alpha & beta).count("1") <= d:
                pairs.append((alpha, beta, k - bin(alpha & beta).count("1")))
    return pairs


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_pair_arrays_match_subset_scan(n: int) -> None:
    """
    Test the cached pair arrays against a scan over all mask pairs.

    :param n: Order.
    :return : None.
    :return: Test assertion.
    """
    for d in range(0, n + 1):
        alphas, betas, dists = dispersal_pair_arrays(n, d, mode="at-most")
        assert list(zip(alphas.tolist(), betas.tolist(), dists.tolist())) == _brute_force_pairs(n, d)
        exact = dispersal_pair_arrays(n, d, mode="exact")
        assert set(exact[2].tolist()) <= {d}
        assert exact[0].size == sum(1 for p in _brute_force_pairs(n, d) if p[2] == d)


def test_pair_arrays_are_cached_and_read_only() -> None:
    """
    Test that repeated requests share one read-only set of arrays.

    :return : None.
    :return: Test assertion.
    """
    first = dispersal_pair_arrays(7, 2, mode="at-most", min_d=1)
    second = dispersal_pair_arrays(7, 2, mode="at-most", min_d=1)
    assert all(a is b for a, b in zip(first, second))
    assert not first[0].flags.writeable
    assert int(first[2].min()) == 1
    assert first[0].size == estimate_pair_count(7, 2)


def test_minor_products_match_single_minors() -> None:
    """
    Test batched minor products against one determinant per minor.

    :return : None.
    :return: Test assertion.
    """
    A = Matrix(np.random.default_rng(11).standard_normal((5, 5)))
    alphas, betas, _ = dispersal_pair_arrays(5, 2, mode="at-most", min_d=1)
    products = minor_products(A, alphas, betas)
    expected = [
        minor(A, IndexSet(a, 5), IndexSet(b, 5)) * minor(A, IndexSet(b, 5), IndexSet(a, 5))
        for a, b in zip(alphas.tolist(), betas.tolist())
    ]
    np.testing.assert_allclose(products, expected, rtol=1e-9, atol=1e-12)


def test_dispersal_pairs_at_order_ten() -> None:
    """
    Test the dispersal-1 enumeration at order 10 against its closed-form count.

    :return : None.
    :return: Test assertion.
    """
    alphas, betas, dists = dispersal_pair_arrays(10, 1, mode="exact")
    assert alphas.size == estimate_pair_count(10, 1)
    assert np.all(np.diff(alphas) >= 0)
    assert np.all(alphas <= betas)
    assert np.all(dists == 1)



def test_mean_sums_of_diagonal() -> None:
    """
    Test c_j = e_j(d) / binomial(n, j) for a diagonal matrix.

    :return : None.
    :return: Test assertion.
    """
    d = [1.0, 2.0, 3.0, 5.0]
    c = mean_minor_sums(principal_minor_table(Matrix.diagonal(d)))
    # elementary symmetric sums from the coefficients of prod (x + d_i)
    e = np.poly([-x for x in d])
    expected = [e[j] / comb(4, j) for j in range(5)]
    np.testing.assert_allclose(c, expected)
    np.testing.assert_allclose(mean_minor_sums(principal_minor_table(Matrix.identity(5))), np.ones(6))


def test_char_poly_from_table_examples() -> None:
    """
    Test characteristic polynomials recovered from principal minors.

    :return : None.
    :return: Test assertion.
    """
    t = principal_minor_table(Matrix([[2, 1], [1, 2]]))
    np.testing.assert_allclose(char_poly_from_table(t, IndexSet.full(2)), [1, -4, 3])
    np.testing.assert_allclose(char_poly_from_table(t, _set(2, 1)), [1, -2])

    identity = principal_minor_table(Matrix.identity(3))
    np.testing.assert_allclose(char_poly_from_table(identity, IndexSet.full(3)), [1, -3, 3, -1])


def test_char_poly_consistency() -> None:
    """
    Test that minor-based characteristic polynomials match eigenvalue-based ones.

    :return : None.
    :return: Test assertion.
    """
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(1, 8))
        A = Matrix(rng.normal(size=(n, n)))
        from_table = char_poly_from_table(principal_minor_table(A), IndexSet.full(n))
        direct = char_poly(A)
        scale = 1.0 + np.max(np.abs(direct))
        np.testing.assert_allclose(from_table, direct, atol=1e-8 * scale)


def test_mean_sums_similarity_invariant() -> None:
    """
    Test that c_j is unchanged under similarity.

    :return : None.
    :return: Test assertion.
    """
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        a = rng.normal(size=(n, n))
        s = rng.normal(size=(n, n)) + n * np.eye(n)
        b = s @ a @ np.linalg.inv(s)
        c_a = mean_minor_sums(principal_minor_table(Matrix(a)))
        c_b = mean_minor_sums(principal_minor_table(Matrix(b)))
        np.testing.assert_allclose(c_b, c_a, rtol=1e-6, atol=1e-6 * (1 + np.max(np.abs(c_a))))


@pytest.mark.slow
def test_char_poly_consistency_full() -> None:
    """
    Test minor-based characteristic polynomials on two hundred matrices up to order 10.

    :return : None.
    :return: Test assertion.
    """
    rng = np.random.default_rng(200)
    for _ in range(200):
        n = int(rng.integers(1, 11))
        A = Matrix(rng.normal(size=(n, n)))
        from_table = char_poly_from_table(principal_minor_table(A), IndexSet.full(n))
        direct = char_poly(A)
        np.testing.assert_allclose(from_table, direct, rtol=1e-8, atol=1e-8 * (1.0 + np.max(np.abs(direct))))
