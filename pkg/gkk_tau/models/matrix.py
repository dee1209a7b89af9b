"""
Dense real matrix and spectrum models.

This module provides the universal input object and its spectrum:
- Matrix: dense real n x n array, immutable after construction
- Spectrum: multiset of n complex eigenvalues, closed under conjugation
- ExtendedReal: a float that may be +inf (min over an empty set)

:return : Matrix model components.
:return: Classes Matrix and Spectrum plus extended-real helpers.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Union
import math

import numpy as np

from gkk_tau.errors import DimensionError, MatrixParseError

# +inf stands for "no real eigenvalue"; plain floats compare correctly against it.
ExtendedReal = float
INF: ExtendedReal = math.inf


def encode_real(value: float) -> Union[float, str]:
    """
    Encode a possibly infinite real for strict JSON.

    :param value: Real value, possibly +/-inf.
    :return : Float or string.
    :return: The value itself when finite, "+inf"/"-inf" otherwise.
    """
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return float(value)


def decode_real(value: Union[float, int, str]) -> float:
    """
    Inverse of encode_real.

    :param value: Encoded value.
    :return : Float.
    :return: Decoded real, possibly infinite.
    """
    if isinstance(value, str):
        if value in ("+inf", "inf"):
            return math.inf
        if value == "-inf":
            return -math.inf
        raise MatrixParseError(f"Not a real number: {value!r}")
    return float(value)


@dataclass(frozen=True, eq=False)
class Matrix:
    """
    Dense real square matrix.

    :param entries: n x n array-like of finite reals (row-major).
    :return : Matrix instance.
    :return: An immutable validated matrix.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        """
        Validate squareness and finiteness, freeze the buffer.

        :return : None.
        :return: Validation side-effect.
        """
        try:
            arr = np.array(self.entries, dtype=float, copy=True)
        except (TypeError, ValueError) as e:
            raise DimensionError(f"Matrix entries are not a rectangular real array: {e}") from e
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"Matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionError("Matrix order must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise DimensionError("Matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        """Order of the matrix."""
        return int(self.entries.shape[0])

    def max_abs(self) -> float:
        """
        Largest entry magnitude.

        :return : Float.
        :return: max |a_ij|.
        """
        return float(np.max(np.abs(self.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        """
        Extract A(rows, cols) using 0-based indices.

        :param rows: Row indices.
        :param cols: Column indices.
        :return : ndarray.
        :return: Copy of the selected submatrix.
        """
        return self.entries[np.ix_(list(rows), list(cols))]

    def shifted(self, t: float) -> "Matrix":
        """
        A + tI.

        :param t: Real shift.
        :return : Matrix instance.
        :return: Shifted matrix.
        """
        return Matrix(self.entries + t * np.eye(self.n))

    def scaled(self, s: float) -> "Matrix":
        """
        s * A.

        :param s: Real factor.
        :return : Matrix instance.
        :return: Scaled matrix.
        """
        return Matrix(s * self.entries)

    def distance(self, other: "Matrix") -> float:
        """
        Max-entry distance to another matrix of the same order.

        :param other: Matrix of the same order.
        :return : Float.
        :return: max |a_ij - b_ij|.
        """
        if other.n != self.n:
            raise DimensionError(f"Order mismatch: {self.n} vs {other.n}")
        return float(np.max(np.abs(self.entries - other.entries)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize matrix to dictionary.

        :return : Dictionary representation.
        :return: Dict with n and rows.
        """
        return {"n": self.n, "rows": self.entries.tolist()}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "Matrix":
        """
        Deserialize matrix from dictionary.

        :param data: Dictionary with rows and optionally n.
        :return : Matrix instance.
        :return: Reconstructed Matrix.
        """
        if "rows" not in data:
            raise MatrixParseError("Matrix object needs a 'rows' key")
        matrix = Matrix(data["rows"])
        if "n" in data and int(data["n"]) != matrix.n:
            raise DimensionError(f"Declared n={data['n']} but rows give order {matrix.n}")
        return matrix

    @staticmethod
    def identity(n: int) -> "Matrix":
        """
        Identity matrix of order n.

        :param n: Order.
        :return : Matrix instance.
        :return: I_n.
        """
        return Matrix(np.eye(n))

    @staticmethod
    def diagonal(values: Sequence[float]) -> "Matrix":
        """
        Diagonal matrix diag(values).

        :param values: Diagonal entries.
        :return : Matrix instance.
        :return: Diagonal matrix.
        """
        return Matrix(np.diag(np.asarray(values, dtype=float)))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Multiset of eigenvalues of a real matrix.

    Values are stored sorted by (real part, imaginary part) and non-real
    values come in exact conjugate pairs.

    :param values: Complex eigenvalues.
    :return : Spectrum instance.
    :return: An immutable spectrum.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=complex, copy=True).reshape(-1)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        """Number of eigenvalues."""
        return int(self.values.shape[0])

    def real_parts(self) -> np.ndarray:
        """Real parts of the eigenvalues."""
        return self.values.real.copy()

    def to_dict(self) -> Dict[str, List[List[float]]]:
        """
        Serialize spectrum to dictionary.

        :return : Dictionary representation.
        :return: Dict with values as [re, im] pairs.
        """
        return {"values": [[float(z.real), float(z.imag)] for z in self.values]}

    @staticmethod
    def from_dict(data: Dict[str, List[List[float]]]) -> "Spectrum":
        """
        Deserialize spectrum from dictionary.

        :param data: Dictionary with values as [re, im] pairs.
        :return : Spectrum instance.
        :return: Reconstructed Spectrum.
        """
        return Spectrum(np.array([complex(re, im) for re, im in data["values"]]))
