"""
Order-preserving fan-out over a thread pool and keyed random streams.

:return : Parallel helpers.
:return: parallel_map and rng_for, used by table construction, searches and fits.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """
    Apply fn to every item, optionally on a thread pool.

    Results come back in input order, so reductions over them are
    independent of the worker count.

    :param fn: Function to apply.
    :param items: Inputs.
    :param jobs: Worker count; 1 or less runs inline.
    :return : List of results.
    :return: fn(item) for each item, in order.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def rng_for(seed: int, *keys: int) -> np.random.Generator:
    """
    Counter-based generator for the stream (seed, keys...).

    Streams with different keys are independent; the same keys always give
    the same stream, whichever worker draws from it.

    :param seed: 64-bit seed.
    :param keys: Stream path, e.g. (restart,) or (order, sample).
    :return : numpy Generator.
    :return: A Philox-backed generator.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=keys)))
