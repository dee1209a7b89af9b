"""
Search and survey models.

:return : Search model components.
:return: MatrixClass, Objective, SearchConfig, SearchResult, ApproximationResult, DispersalProfile, SurveyConfig.
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

import pandas as pd

from gkk_tau.errors import ConfigError
from gkk_tau.models.matrix import Matrix, encode_real


class MatrixClass(str, Enum):
    """Matrix classes the search engine can sample and walk in."""

    P = "P"
    GKK = "GKK"
    STRICT_GKK = "strictGKK"
    SIGN_SYMMETRIC = "signSymmetric"
    OMEGA = "omega"
    TAU = "tau"
    GKK_TAU = "GKKtau"
    M_MATRIX = "Mmatrix"
    HPD = "HPD"
    REAL_SPECTRUM = "realSpectrum"


class Objective(str, Enum):
    """Margins the search engine minimizes."""

    MIN_STABILITY_MARGIN = "minStabilityMargin"
    MIN_VARGA_MARGIN = "minVargaMargin"
    MIN_NEWTON_MARGIN = "minNewtonMargin"
    MIN_STRICT_GKK_MARGIN = "minStrictGKKMargin"
    MIN_HF_MARGIN = "minHFMargin"


@dataclass(frozen=True)
class SearchConfig:
    """
    Parameters of a seeded hill-descent run.

    :param n: Matrix order.
    :param seed: 64-bit seed.
    :param iterations: Perturbation budget per restart.
    :param step_init: Initial perturbation size (relative to max |entry| = 1).
    :param step_decay: Multiplicative decay applied each iteration.
    :param step_min: Floor of the step size.
    :param restarts: Independent chains.
    :param start_budget: Rejection budget for finding a starting member.
    :param trace_every: Sampling period of the best-objective trace.
    :param require_stable: Restrict the walk to stable members.
    :return : SearchConfig instance.
    :return: Validated search parameters.
    """

    n: int
    seed: int = 0
    iterations: int = 1000
    step_init: float = 0.2
    step_decay: float = 0.9995
    step_min: float = 1e-4
    restarts: int = 1
    start_budget: int = 2000
    trace_every: int = 50
    require_stable: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}")
        if not 0 < self.step_decay <= 1:
            raise ConfigError(f"step_decay must lie in (0, 1], got {self.step_decay}")
        if not 0 < self.step_min <= self.step_init:
            raise ConfigError("Need 0 < step_min <= step_init")
        if self.trace_every < 1 or self.start_budget < 1:
            raise ConfigError("trace_every and start_budget must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def step_at(self, iteration: int) -> float:
        """Step size at a given iteration."""
        return max(self.step_init * self.step_decay**iteration, self.step_min)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class SearchResult:
    """
    Best member found by an extremal search.

    :param matrix_class: Class walked in.
    :param objective: Objective minimized.
    :param best: Best matrix found.
    :param best_objective: Objective value at best.
    :param trace: Sampled best-so-far objective values of the winning restart.
    :param membership_audit: Full classify report of best.
    :param seed: Seed echo.
    :param config: Search configuration.
    :param restart: Index of the winning restart.
    :param restart_objectives: Best objective of every restart.
    :param marginal: Whether best sits near a class boundary.
    :return : SearchResult instance.
    :return: Search outcome.
    """

    matrix_class: MatrixClass
    objective: Objective
    best: Matrix
    best_objective: float
    trace: List[float]
    membership_audit: Dict[str, Any]
    seed: int
    config: SearchConfig
    restart: int = 0
    restart_objectives: List[float] = field(default_factory=list)
    marginal: bool = False

    def trace_frame(self) -> pd.DataFrame:
        """
        Trace as a DataFrame with columns sample and best_objective.

        :return : DataFrame.
        :return: The sampled trace.
        """
        return pd.DataFrame(
            {"sample": range(len(self.trace)), "best_objective": self.trace}
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize result to dictionary.

        :return : Dictionary representation.
        :return: Dict with seed, config, trace, best matrix and audit.
        """
        return {
            "class": self.matrix_class.value,
            "objective": self.objective.value,
            "seed": self.seed,
            "config": self.config.to_dict(),
            "best_objective": encode_real(self.best_objective),
            "best": self.best.to_dict(),
            "restart": self.restart,
            "restart_objectives": [encode_real(v) for v in self.restart_objectives],
            "trace": [encode_real(v) for v in self.trace],
            "marginal": self.marginal,
            "membership_audit": self.membership_audit,
        }


@dataclass(frozen=True)
class ApproximationResult:
    """
    Outcome of a strict-GKK proximity search.

    :param found: Whether a strict GKK matrix (tau too, if required) was found.
    :param best: Best candidate (the witness when found).
    :param distance: Max-entry distance of best from the input.
    :param best_margin: Normalized strictness margin reached by best.
    :param epsilon: Radius of the searched ball.
    :param require_tau: Whether tau membership was also required.
    :param seed: Seed echo.
    :param evaluations: Number of candidates evaluated.
    :param audit: Full classify report of best.
    :return : ApproximationResult instance.
    :return: Proximity search outcome.
    """

    found: bool
    best: Matrix
    distance: float
    best_margin: float
    epsilon: float
    require_tau: bool
    seed: int
    evaluations: int
    audit: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "found": self.found,
            "distance": self.distance,
            "best_margin": encode_real(self.best_margin),
            "epsilon": self.epsilon,
            "require_tau": self.require_tau,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "best": self.best.to_dict(),
            "audit": self.audit,
        }


@dataclass(frozen=True)
class DispersalProfile:
    """
    Sign-condition margins for every dispersal bound d = 1..n.

    :param n: Order.
    :param entries: Per-d dicts with d, verdict, margin, checked_count, witness.
    :param largest_d: Largest d whose condition holds (0 if d = 1 fails).
    :param stable: Stability verdict of the matrix.
    :param stability_margin: Minimum real part of the spectrum.
    :return : DispersalProfile instance.
    :return: Data point for the dispersal question.
    """

    n: int
    entries: List[Dict[str, Any]]
    largest_d: int
    stable: str
    stability_margin: float

    def to_frame(self) -> pd.DataFrame:
        """
        Profile as a DataFrame, one row per d.

        :return : DataFrame.
        :return: Columns d, verdict, margin, checked_count.
        """
        return pd.DataFrame(
            [{k: e[k] for k in ("d", "verdict", "margin", "checked_count")} for e in self.entries]
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "largest_d": self.largest_d,
            "stable": self.stable,
            "stability_margin": encode_real(self.stability_margin),
            "entries": [{**e, "margin": encode_real(e["margin"])} for e in self.entries],
        }


@dataclass(frozen=True)
class SurveyConfig:
    """
    Parameters of a per-order class survey.

    :param matrix_class: Class sampled.
    :param orders: Orders surveyed.
    :param samples: Members drawn per order.
    :param seed: Seed.
    :param budget: Rejection budget per member.
    :return : SurveyConfig instance.
    :return: Validated survey parameters.
    """

    matrix_class: MatrixClass
    orders: Tuple[int, ...]
    samples: int = 100
    seed: int = 0
    budget: int = 2000

    def __post_init__(self) -> None:
        if not self.orders or min(self.orders) < 1:
            raise ConfigError("orders must be a nonempty list of positive integers")
        if self.samples < 1 or self.budget < 1:
            raise ConfigError("samples and budget must be >= 1")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "class": self.matrix_class.value,
            "orders": list(self.orders),
            "samples": self.samples,
            "seed": self.seed,
            "budget": self.budget,
        }


def parse_class(tag: str) -> MatrixClass:
    """MatrixClass from its tag, ConfigError on unknown tags."""
    try:
        return MatrixClass(tag)
    except ValueError:
        raise ConfigError(f"Unknown class '{tag}' (known: {', '.join(c.value for c in MatrixClass)})") from None


def parse_objective(tag: str) -> Objective:
    """Objective from its tag, ConfigError on unknown tags."""
    try:
        return Objective(tag)
    except ValueError:
        raise ConfigError(f"Unknown objective '{tag}' (known: {', '.join(o.value for o in Objective)})") from None
