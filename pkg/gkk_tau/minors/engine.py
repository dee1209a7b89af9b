"""
Subset combinatorics and minor computation.

Principal minors are computed per subset by pivoted elimination, batched
by subset size. Pairs of index sets are enumerated in ascending mask order
with the smaller mask first.

:return : Minor engine utilities.
:return: principal_minor_table, minor, dispersal, pairs_with_dispersal, dispersal_pair_arrays, minor_products, mean_minor_sums, char_poly_from_table.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, List, Literal, Sequence, Tuple
import logging
import time

import numpy as np

from gkk_tau.errors import ConfigError, OrderTooLargeError, SizeMismatchError
from gkk_tau.linalg.core import batched_determinants, exact_determinant
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.minors import (
    DispersalPair,
    IndexSet,
    MinorTable,
    TableMode,
    compute_mean_minor_sums,
    mask_members,
    popcount,
    popcounts,
)
from gkk_tau.parallel import parallel_map

logger = logging.getLogger(__name__)

MAX_TABLE_ORDER = 20
WARN_TABLE_ORDER = 16
CHUNK_SIZE = 1 << 15

PairMode = Literal["exact", "at-most"]


def masks_of_size(n: int, k: int) -> np.ndarray:
    """
    All masks below 2^n with exactly k bits set, ascending.

    :param n: Order.
    :param k: Subset size.
    :return : ndarray of int64.
    :return: Masks of size k.
    """
    return np.flatnonzero(popcounts(n) == k)


def positions_array(masks: Sequence[int], k: int) -> np.ndarray:
    """
    0-based member positions of each mask as an (m, k) array.

    :param masks: Masks, all of size k.
    :param k: Common size.
    :return : ndarray of shape (m, k).
    :return: Row i lists the members of masks[i] in increasing order.
    """
    masks = np.asarray(masks, dtype=np.int64)
    if masks.size == 0:
        return np.empty((0, k), dtype=np.int64)
    width = max(int(masks.max()).bit_length(), k)
    bits = (masks[:, None] >> np.arange(width)) & 1
    # stable sort puts set bits first, each group in increasing position
    return np.argsort(1 - bits, axis=1, kind="stable")[:, :k]


def mask_sizes(masks: np.ndarray, n: int) -> np.ndarray:
    """
    Popcount of each mask below 2^n.

    :param masks: Integer masks.
    :param n: Order.
    :return : ndarray of int64.
    :return: Set sizes aligned with masks.
    """
    masks = np.asarray(masks, dtype=np.int64)
    return ((masks[..., None] >> np.arange(n)) & 1).sum(axis=-1)


def gather_submatrices(a: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """
    Stack of submatrices a(rows[i], cols[i]).

    :param a: Square array.
    :param rows: (m, k) row positions.
    :param cols: (m, k) column positions.
    :return : ndarray of shape (m, k, k).
    :return: Gathered submatrices.
    """
    return a[rows[:, :, None], cols[:, None, :]]


def _float_chunk(args: Tuple[np.ndarray, np.ndarray, int]) -> np.ndarray:
    a, masks, k = args
    pos = positions_array(masks, k)
    return batched_determinants(gather_submatrices(a, pos, pos))


def _exact_chunk(args: Tuple[List[List[Fraction]], np.ndarray, int]) -> np.ndarray:
    rows, masks, k = args
    out = np.empty(len(masks))
    for i, mask in enumerate(masks):
        pos = mask_members(int(mask))
        out[i] = float(exact_determinant([[rows[r][c] for c in pos] for r in pos]))
    return out


def principal_minor_table(
    A: Matrix, mode: TableMode = "float", jobs: int = 1
) -> MinorTable:
    """
    All 2^n principal minors of A.

    :param A: Matrix of order n <= 20.
    :param mode: "float" (pivoted LU) or "exact" (rational elimination, converted on output).
    :param jobs: Worker count; results do not depend on it.
    :return : MinorTable.
    :return: Table with A[empty] = 1 and the mean sums c_0..c_n.
    """
    n = A.n
    if n > MAX_TABLE_ORDER:
        raise OrderTooLargeError(f"Minor tables are capped at order {MAX_TABLE_ORDER}, got {n}")
    if n > WARN_TABLE_ORDER:
        logger.warning(f"Building a minor table of order {n}: {1 << n} determinants")

    if mode not in ("float", "exact"):
        raise ConfigError(f"Unknown table mode '{mode}'")

    start = time.time()
    values = np.empty(1 << n)
    values[0] = 1.0
    source = [[Fraction(float(x)) for x in row] for row in A.entries] if mode == "exact" else A.entries
    tasks = []
    for k in range(1, n + 1):
        masks = masks_of_size(n, k)
        for lo in range(0, len(masks), CHUNK_SIZE):
            chunk = masks[lo:lo + CHUNK_SIZE]
            tasks.append((chunk, (source, chunk, k)))
    worker = _exact_chunk if mode == "exact" else _float_chunk
    results = parallel_map(worker, [t[1] for t in tasks], jobs)
    for (chunk, _), dets in zip(tasks, results):
        values[chunk] = dets

    logger.debug(f"Minor table of order {n} ({mode}) built in {time.time() - start:.3f}s")
    return MinorTable(n=n, values=values, mode=mode)


def minor(A: Matrix, alpha: IndexSet, beta: IndexSet) -> float:
    """
    A[alpha, beta] = det A(alpha, beta).

    :param A: Matrix.
    :param alpha: Row index set.
    :param beta: Column index set.
    :return : Float.
    :return: The minor.
    """
    if alpha.size != beta.size:
        raise SizeMismatchError(f"Minor needs equal sizes, got #{alpha}={alpha.size} and #{beta}={beta.size}")
    if alpha.size == 0:
        return 1.0
    return float(np.linalg.det(A.submatrix(alpha.positions(), beta.positions())))


def dispersal(alpha: IndexSet, beta: IndexSet) -> int:
    """
    #alpha - #(alpha & beta).

    :param alpha: Index set.
    :param beta: Index set of the same size.
    :return : Int.
    :return: The dispersal, symmetric in its arguments.
    """
    if alpha.size != beta.size:
        raise SizeMismatchError(f"Dispersal needs equal sizes, got {alpha} and {beta}")
    return alpha.size - popcount(alpha.mask & beta.mask)


def _dispersal_range(d: int, mode: PairMode) -> Tuple[int, int]:
    if mode == "exact":
        return d, d
    if mode == "at-most":
        return 0, d
    raise ConfigError(f"Unknown pair mode '{mode}'")


def _combination_index(m: int, r: int) -> np.ndarray:
    return np.array(list(combinations(range(m), r)), dtype=np.int64).reshape(-1, r)


@lru_cache(maxsize=32)
def _pair_arrays(n: int, d_lo: int, d_hi: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    alpha_parts, beta_parts, d_parts = [], [], []
    weights = np.int64(1) << np.arange(n, dtype=np.int64)
    for k in range(1, n + 1):
        alphas = masks_of_size(n, k)
        bits = (alphas[:, None] >> np.arange(n)) & 1
        order = np.argsort(1 - bits, axis=1, kind="stable")
        inside, outside = weights[order[:, :k]], weights[order[:, k:]]
        for dd in range(d_lo, min(d_hi, k, n - k) + 1):
            removed = inside[:, _combination_index(k, dd)].sum(axis=-1)
            added = outside[:, _combination_index(n - k, dd)].sum(axis=-1)
            betas = alphas[:, None, None] - removed[:, :, None] + added[:, None, :]
            a = np.broadcast_to(alphas[:, None, None], betas.shape).ravel()
            b = betas.ravel()
            keep = b >= a
            alpha_parts.append(a[keep])
            beta_parts.append(b[keep])
            d_parts.append(np.full(int(keep.sum()), dd, dtype=np.int64))
    alpha_masks = np.concatenate(alpha_parts) if alpha_parts else np.empty(0, dtype=np.int64)
    beta_masks = np.concatenate(beta_parts) if beta_parts else np.empty(0, dtype=np.int64)
    dispersals = np.concatenate(d_parts) if d_parts else np.empty(0, dtype=np.int64)
    order = np.lexsort((beta_masks, alpha_masks))
    out = (alpha_masks[order], beta_masks[order], dispersals[order])
    for arr in out:
        arr.setflags(write=False)
    return out


def dispersal_pair_arrays(
    n: int, d: int, mode: PairMode = "exact", min_d: int = 0
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Pairs of equal-size nonempty index sets by dispersal, as mask arrays.

    Arrays are cached per (n, d, mode) and read-only. Pairs come in
    ascending (alpha mask, beta mask) order with alpha <= beta.

    :param n: Order.
    :param d: Dispersal, 0 <= d <= n.
    :param mode: "exact" for dispersal d, "at-most" for dispersal <= d.
    :param min_d: Drop pairs with dispersal below this.
    :return : Tuple (alpha masks, beta masks, dispersals).
    :return: Aligned int64 arrays.
    """
    if not 0 <= d <= n:
        raise ConfigError(f"Dispersal must lie in 0..{n}, got {d}")
    d_lo, d_hi = _dispersal_range(d, mode)
    return _pair_arrays(n, max(d_lo, min_d), d_hi)


def pairs_with_dispersal(n: int, d: int, mode: PairMode = "exact") -> Iterator[DispersalPair]:
    """
    Unordered pairs of equal-size nonempty index sets by dispersal.

    Pairs come in ascending (alpha mask, beta mask) order with alpha <= beta.

    :param n: Order.
    :param d: Dispersal, 0 <= d <= n.
    :param mode: "exact" for dispersal d, "at-most" for dispersal <= d.
    :return : Iterator of DispersalPair.
    :return: Deterministic pair stream.
    """
    alpha_masks, beta_masks, dispersals = dispersal_pair_arrays(n, d, mode)
    for a, b, dd in zip(alpha_masks.tolist(), beta_masks.tolist(), dispersals.tolist()):
        yield DispersalPair(IndexSet(a, n), IndexSet(b, n), dd)



def estimate_pair_count(n: int, d: int) -> int:
    """
    Number of unordered pairs with dispersal 1..d.

    :param n: Order.
    :param d: Largest dispersal.
    :return : Int.
    :return: Exact pair count.
    """
    total = 0
    for k in range(1, n + 1):
        for dd in range(1, d + 1):
            total += comb(n, k) * comb(k, dd) * comb(n - k, dd)
    return total // 2


def minor_products(A: Matrix, alpha_masks: np.ndarray, beta_masks: np.ndarray) -> np.ndarray:
    """
    A[alpha, beta] * A[beta, alpha] for every pair of masks, batched by size.

    :param A: Matrix.
    :param alpha_masks: Row masks.
    :param beta_masks: Column masks, each of the same size as its alpha.
    :return : ndarray aligned with the masks.
    :return: Products of the two transposed minors.
    """
    alpha_masks = np.asarray(alpha_masks, dtype=np.int64)
    beta_masks = np.asarray(beta_masks, dtype=np.int64)
    out = np.empty(alpha_masks.size)
    sizes = mask_sizes(alpha_masks, A.n)
    for k in np.unique(sizes).tolist():
        idx = np.flatnonzero(sizes == k)
        rows = positions_array(alpha_masks[idx], k)
        cols = positions_array(beta_masks[idx], k)
        forward = batched_determinants(gather_submatrices(A.entries, rows, cols))
        backward = batched_determinants(gather_submatrices(A.entries, cols, rows))
        out[idx] = forward * backward
    return out



def mean_minor_sums(t: MinorTable) -> np.ndarray:
    """
    c_j = sum_{#alpha=j} A[alpha] / binomial(n, j), j = 0..n.

    :param t: Minor table.
    :return : ndarray of shape (n+1,).
    :return: The Newton aggregates; c_0 = 1.
    """
    return compute_mean_minor_sums(t.values, t.n)


def char_poly_from_table(t: MinorTable, gamma: IndexSet) -> np.ndarray:
    """
    Characteristic polynomial of A(gamma) from principal minors alone.

    The coefficient of lambda^(k-j) is (-1)^j times the sum of A[beta]
    over beta within gamma with #beta = j, k = #gamma.

    :param t: Minor table.
    :param gamma: Nonempty index set.
    :return : ndarray of shape (k+1,).
    :return: Monic coefficients, highest degree first.
    """
    if gamma.is_empty():
        raise SizeMismatchError("char_poly_from_table needs a nonempty index set")
    k = gamma.size
    sums = np.zeros(k + 1)
    sub = gamma.mask
    while True:
        sums[popcount(sub)] += t.values[sub]
        if sub == 0:
            break
        sub = (sub - 1) & gamma.mask
    signs = np.array([(-1.0) ** j for j in range(k + 1)])
    return signs * sums
