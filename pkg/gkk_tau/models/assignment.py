"""
Principal-minor assignment models.

:return : Assignment model components.
:return: FitConfig and AssignmentResult.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from gkk_tau.errors import ConfigError, InvariantViolation
from gkk_tau.models.matrix import Matrix


@dataclass(frozen=True)
class FitConfig:
    """
    Multi-start least-squares parameters.

    :param starts: Number of seeded starts.
    :param seed: Seed of the start generator.
    :param max_nfev: Residual evaluations per start (default 200 * n^2).
    :param tol_fit: Convergence threshold (default 1e-8 * (1 + max |p_alpha|)).
    :param noise: Relative size of the start perturbation.
    :return : FitConfig instance.
    :return: Validated fit parameters.
    """

    starts: int = 16
    seed: int = 0
    max_nfev: Optional[int] = None
    tol_fit: Optional[float] = None
    noise: float = 0.5

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ConfigError(f"starts must be >= 1, got {self.starts}")
        if self.max_nfev is not None and self.max_nfev < 1:
            raise ConfigError("max_nfev must be >= 1")
        if self.tol_fit is not None and self.tol_fit <= 0:
            raise ConfigError("tol_fit must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class AssignmentResult:
    """
    Best matrix found for a target minor table.

    :param matrix: Best-fit matrix.
    :param residual: Root-sum-square of A[alpha] - p_alpha over nonempty alpha.
    :param converged: Whether residual <= tol_fit.
    :param starts_used: Starts consumed before the reported one was chosen.
    :param tol_fit: Threshold used.
    :param start_residuals: Final residual of every start run.
    :return : AssignmentResult instance.
    :return: Fit outcome.
    """

    matrix: Matrix
    residual: float
    converged: bool
    starts_used: int
    tol_fit: float
    start_residuals: List[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.converged and self.residual > self.tol_fit:
            raise InvariantViolation("converged result must have residual <= tol_fit")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "matrix": self.matrix.to_dict(),
            "residual": self.residual,
            "converged": self.converged,
            "starts_used": self.starts_used,
            "tol_fit": self.tol_fit,
            "start_residuals": self.start_residuals,
        }
