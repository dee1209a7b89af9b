"""
Real polynomial model.

:return : Polynomial model.
:return: RealPolynomial, normalized monic on ingestion.
"""

from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from gkk_tau.errors import DegeneracyError, MatrixParseError


@dataclass(frozen=True, eq=False)
class RealPolynomial:
    """
    Real polynomial, coefficients highest degree first.

    Leading zeros are dropped and the polynomial is divided by its leading
    coefficient, so positive rescaling never changes any derived verdict.

    :param coeffs: Coefficients, highest degree first.
    :return : RealPolynomial instance.
    :return: A monic real polynomial.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=float, copy=True).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise MatrixParseError("Polynomial coefficients must be finite")
        nonzero = np.flatnonzero(arr)
        if nonzero.size == 0:
            raise DegeneracyError("The zero polynomial has no degree")
        arr = arr[nonzero[0]:]
        arr = arr / arr[0]
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return int(self.coeffs.shape[0] - 1)

    def __call__(self, x: Any) -> Any:
        return np.polyval(self.coeffs, x)

    def roots(self) -> np.ndarray:
        """
        All complex roots (companion-matrix eigenvalues).

        :return : ndarray of complex.
        :return: Roots, empty for constants.
        """
        if self.degree == 0:
            return np.zeros(0, dtype=complex)
        return np.roots(self.coeffs).astype(complex)

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize to the polynomial file format.

        :return : Dictionary representation.
        :return: {"coeffs": [highest..lowest]}.
        """
        return {"coeffs": [float(x) for x in self.coeffs]}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "RealPolynomial":
        """
        Deserialize from the polynomial file format.

        :param data: Dictionary with coeffs.
        :return : RealPolynomial instance.
        :return: Reconstructed polynomial.
        """
        if "coeffs" not in data:
            raise MatrixParseError("Polynomial object needs a 'coeffs' key")
        return RealPolynomial(np.asarray(data["coeffs"], dtype=float))

    @staticmethod
    def from_roots(roots: Sequence[float]) -> "RealPolynomial":
        """
        Monic polynomial with the given real roots.

        :param roots: Roots.
        :return : RealPolynomial instance.
        :return: prod (x - r).
        """
        return RealPolynomial(np.poly(np.asarray(roots, dtype=float)) if len(roots) else np.array([1.0]))
