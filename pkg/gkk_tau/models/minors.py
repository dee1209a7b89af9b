"""
Index-set and minor-table models.

Index sets are n-bit masks: bit i set means index i+1 is a member. The
empty set is mask 0. Tables are numpy arrays indexed directly by mask.

:return : Minor model components.
:return: Classes IndexSet, DispersalPair, MinorTable and TargetMinorTable.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Dict, Iterable, List, Literal, Tuple
import math

import numpy as np

from gkk_tau.errors import DimensionError, InputError, MatrixParseError, SizeMismatchError
from gkk_tau.models.matrix import decode_real

TableMode = Literal["float", "exact"]

MEAN_SUM_RTOL = 1e-8


def popcount(mask: int) -> int:
    """Number of set bits of mask."""
    return bin(mask).count("1")


@lru_cache(maxsize=32)
def popcounts(n: int) -> np.ndarray:
    """
    Population counts of all masks below 2^n.

    :param n: Order.
    :return : ndarray of shape (2^n,).
    :return: popcount(mask) for every mask.
    """
    masks = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        counts += (masks >> i) & 1
    counts.setflags(write=False)
    return counts


def mask_members(mask: int) -> Tuple[int, ...]:
    """
    0-based positions of the set bits, increasing.

    :param mask: Bit mask.
    :return : Tuple of ints.
    :return: Member positions.
    """
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def compute_mean_minor_sums(values: np.ndarray, n: int) -> np.ndarray:
    """
    c_j = (sum of size-j principal minors) / binomial(n, j), j = 0..n.

    :param values: Table values indexed by mask, values[0] = 1.
    :param n: Order.
    :return : ndarray of shape (n+1,).
    :return: Mean minor sums c_0..c_n.
    """
    sums = np.bincount(popcounts(n), weights=values, minlength=n + 1)
    return np.array([sums[j] / comb(n, j) for j in range(n + 1)])


@dataclass(frozen=True)
class IndexSet:
    """
    Subset of {1..n} encoded as an n-bit mask.

    :param mask: Bit mask, bit i set iff index i+1 is a member.
    :param n: Ambient order.
    :return : IndexSet instance.
    :return: An index set.
    """

    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DimensionError(f"Ambient order must be nonnegative, got {self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise DimensionError(f"Mask {self.mask} out of range for order {self.n}")

    @property
    def size(self) -> int:
        """#alpha."""
        return popcount(self.mask)

    def positions(self) -> Tuple[int, ...]:
        """0-based member positions, increasing."""
        return mask_members(self.mask)

    def members(self) -> Tuple[int, ...]:
        """1-based members, increasing."""
        return tuple(i + 1 for i in mask_members(self.mask))

    def is_empty(self) -> bool:
        return self.mask == 0

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.mask | other.mask, self.n)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.mask & other.mask, self.n)

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return "{" + ",".join(str(m) for m in self.members()) + "}"

    def to_dict(self) -> List[int]:
        """
        Serialize as the list of 1-based members.

        :return : List of ints.
        :return: Members in increasing order.
        """
        return list(self.members())

    @staticmethod
    def from_members(members: Iterable[int], n: int) -> "IndexSet":
        """
        Build an index set from 1-based members.

        :param members: 1-based indices.
        :param n: Ambient order.
        :return : IndexSet instance.
        :return: The index set.
        """
        mask = 0
        for m in members:
            if not 1 <= m <= n:
                raise DimensionError(f"Index {m} outside 1..{n}")
            mask |= 1 << (m - 1)
        return IndexSet(mask, n)

    @staticmethod
    def full(n: int) -> "IndexSet":
        """{1..n}."""
        return IndexSet((1 << n) - 1, n)

    @staticmethod
    def leading(j: int, n: int) -> "IndexSet":
        """{1..j}."""
        return IndexSet((1 << j) - 1, n)


@dataclass(frozen=True)
class DispersalPair:
    """
    Unordered pair of equal-size index sets with its dispersal.

    Canonical order keeps the smaller mask in alpha; use DispersalPair.of.

    :param alpha: Index set with the smaller mask.
    :param beta: Index set with the larger (or equal) mask.
    :param d: Dispersal #alpha - #(alpha & beta).
    :return : DispersalPair instance.
    :return: A dispersal pair.
    """

    alpha: IndexSet
    beta: IndexSet
    d: int

    def __post_init__(self) -> None:
        if self.alpha.size != self.beta.size:
            raise SizeMismatchError(f"Pair sizes differ: {self.alpha} vs {self.beta}")
        if self.alpha.mask > self.beta.mask:
            raise ValueError("DispersalPair must be canonical (smaller mask first)")
        if self.d != self.alpha.size - popcount(self.alpha.mask & self.beta.mask):
            raise ValueError(f"Dispersal {self.d} inconsistent with {self.alpha}, {self.beta}")

    @staticmethod
    def of(alpha: IndexSet, beta: IndexSet) -> "DispersalPair":
        """
        Canonical pair for two equal-size sets.

        :param alpha: First index set.
        :param beta: Second index set.
        :return : DispersalPair instance.
        :return: Pair with the smaller mask first.
        """
        if alpha.size != beta.size:
            raise SizeMismatchError(f"Pair sizes differ: {alpha} vs {beta}")
        if alpha.mask > beta.mask:
            alpha, beta = beta, alpha
        return DispersalPair(alpha, beta, alpha.size - popcount(alpha.mask & beta.mask))

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize pair to dictionary.

        :return : Dictionary representation.
        :return: Dict with alpha, beta (1-based members) and d.
        """
        return {"alpha": self.alpha.to_dict(), "beta": self.beta.to_dict(), "d": self.d}


def _parse_minor_entries(data: Dict[str, Any]) -> Tuple[int, Dict[int, float]]:
    if "n" not in data or "minors" not in data:
        raise MatrixParseError("Minor table needs 'n' and 'minors' keys")
    n = int(data["n"])
    entries: Dict[int, float] = {}
    for key, value in data["minors"].items():
        try:
            mask = int(key)
        except ValueError:
            raise MatrixParseError(f"Minor key {key!r} is not a decimal mask") from None
        if not 0 <= mask < (1 << n):
            raise DimensionError(f"Minor key {mask} out of range for order {n}")
        entries[mask] = decode_real(value)
    return n, entries


@dataclass(frozen=True, eq=False)
class MinorTable:
    """
    All principal minors of an order-n matrix, indexed by mask.

    :param n: Order.
    :param values: Array of shape (2^n,), values[0] = 1.
    :param c: Mean minor sums c_0..c_n (computed when omitted, checked against the minors otherwise).
    :param mode: "float" or "exact" (how the values were computed).
    :return : MinorTable instance.
    :return: A principal-minor table.
    """

    n: int
    values: np.ndarray
    c: np.ndarray = field(default=None)  # type: ignore[assignment]
    mode: TableMode = "float"

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if values.shape[0] != (1 << self.n):
            raise DimensionError(f"Table of order {self.n} needs {1 << self.n} entries, got {values.shape[0]}")
        if values[0] != 1.0:
            raise InputError(f"Minor of the empty set must be 1, got {values[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        computed = compute_mean_minor_sums(values, self.n)
        if self.c is None:
            c = computed
        else:
            c = np.array(self.c, dtype=float).reshape(-1)
            if c.shape != computed.shape:
                raise DimensionError(f"Table of order {self.n} needs {self.n + 1} mean sums, got {c.shape[0]}")
            bad = np.flatnonzero(~np.isclose(c, computed, rtol=MEAN_SUM_RTOL, atol=MEAN_SUM_RTOL))
            if bad.size:
                j = int(bad[0])
                raise InputError(
                    f"Mean minor sum c_{j} = {c[j]} does not match the minors (expected {computed[j]})"
                )
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def __getitem__(self, alpha: Any) -> float:
        mask = alpha.mask if isinstance(alpha, IndexSet) else int(alpha)
        return float(self.values[mask])

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def nonempty_min(self) -> Tuple[float, int]:
        """
        Smallest nonempty principal minor and its mask (first on ties).

        :return : Tuple (value, mask).
        :return: Minimum and argmin over masks >= 1.
        """
        idx = int(np.argmin(self.values[1:])) + 1
        return float(self.values[idx]), idx

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize to the MinorTable file format.

        :return : Dictionary representation.
        :return: {"n", "minors": {"<mask>": value}, "c": [...]}.
        """
        return {
            "n": self.n,
            "minors": {str(mask): float(v) for mask, v in enumerate(self.values)},
            "c": [float(x) for x in self.c],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "MinorTable":
        """
        Deserialize from the MinorTable file format.

        :param data: Dictionary with n, minors and optionally c.
        :return : MinorTable instance.
        :return: Reconstructed table.
        """
        n, entries = _parse_minor_entries(data)
        values = np.full(1 << n, math.nan)
        for mask, v in entries.items():
            values[mask] = v
        if np.isnan(values).any():
            raise DimensionError(f"Minor table of order {n} is incomplete")
        c = data.get("c")
        return MinorTable(n=n, values=values, c=None if c is None else np.asarray(c, dtype=float))


@dataclass(frozen=True, eq=False)
class TargetMinorTable:
    """
    Prescribed values p_alpha for every nonempty principal minor.

    :param n: Order.
    :param targets: Array of shape (2^n,); entry 0 is forced to 1.
    :return : TargetMinorTable instance.
    :return: A complete target table.
    """

    n: int
    targets: np.ndarray

    def __post_init__(self) -> None:
        targets = np.array(self.targets, dtype=float, copy=True).reshape(-1)
        if targets.shape[0] != (1 << self.n):
            raise DimensionError(
                f"Target table of order {self.n} needs {1 << self.n} entries, got {targets.shape[0]}"
            )
        targets[0] = 1.0
        if not np.all(np.isfinite(targets)):
            raise DimensionError("Target values must be finite and complete")
        targets.setflags(write=False)
        object.__setattr__(self, "targets", targets)

    def __getitem__(self, alpha: Any) -> float:
        mask = alpha.mask if isinstance(alpha, IndexSet) else int(alpha)
        return float(self.targets[mask])

    def max_abs(self) -> float:
        """max |p_alpha| over nonempty alpha."""
        return float(np.max(np.abs(self.targets[1:])))

    def as_table(self) -> MinorTable:
        """
        View the targets as a MinorTable (for inequality checks).

        :return : MinorTable instance.
        :return: Table with the target values.
        """
        return MinorTable(n=self.n, values=self.targets)

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize to the MinorTable file format.

        :return : Dictionary representation.
        :return: {"n", "minors": {...}}.
        """
        return {"n": self.n, "minors": {str(m): float(v) for m, v in enumerate(self.targets)}}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "TargetMinorTable":
        """
        Deserialize from the MinorTable file format, key "0" optional.

        :param data: Dictionary with n and minors.
        :return : TargetMinorTable instance.
        :return: Reconstructed targets.
        """
        n, entries = _parse_minor_entries(data)
        targets = np.full(1 << n, math.nan)
        targets[0] = 1.0
        for mask, v in entries.items():
            if mask:
                targets[mask] = v
        missing = [m for m in range(1, 1 << n) if math.isnan(targets[m])]
        if missing:
            raise DimensionError(f"Target table misses masks {missing[:5]}{'...' if len(missing) > 5 else ''}")
        return TargetMinorTable(n=n, targets=targets)

    @staticmethod
    def from_mapping(n: int, targets: Dict[Tuple[int, ...], float]) -> "TargetMinorTable":
        """
        Build targets from a mapping of 1-based member tuples to values.

        :param n: Order.
        :param targets: {(1,): p_1, (1, 2): p_12, ...}.
        :return : TargetMinorTable instance.
        :return: Target table.
        """
        values = np.full(1 << n, math.nan)
        values[0] = 1.0
        for members, v in targets.items():
            values[IndexSet.from_members(members, n).mask] = v
        return TargetMinorTable(n=n, targets=values)
