"""
Full classification of a matrix and single-check dispatch.

:return : Classification entry points.
:return: classify, run_check, CHECK_NAMES.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List
import logging

from gkk_tau.classify.checks import (
    gkk_check,
    hadamard_fischer_check,
    m_matrix_check,
    newton_check,
    omega_tau_check,
    p_matrix_check,
    sign_symmetric_check,
    stability_check,
    strict_gkk_check,
    varga_cone_check,
)
from gkk_tau.config import DEFAULT_TOLERANCES, PASS, ToleranceConfig
from gkk_tau.errors import ConfigError
from gkk_tau.linalg.core import eigenvalues, min_real_eigenvalue
from gkk_tau.minors.engine import principal_minor_table
from gkk_tau.models.matrix import ExtendedReal, Matrix, Spectrum, encode_real
from gkk_tau.models.minors import MinorTable
from gkk_tau.models.reports import ClassReport, OmegaProfile

logger = logging.getLogger(__name__)

LABELS = {
    "P": "p",
    "GKK": "gkk",
    "strictGKK": "strict-gkk",
    "signSymmetric": "sign-sym",
    "omega": "omega",
    "tau": "tau",
    "M": "m",
    "stable": "stable",
    "Varga": "varga",
    "HF": "hf",
    "Newton": "newton",
}


@dataclass(frozen=True)
class ClassificationReport:
    """
    Every certifier run on one matrix.

    :param matrix: The classified matrix.
    :param table: Its principal-minor table.
    :param spectrum: Its eigenvalues.
    :param l: Smallest real eigenvalue, +inf when none.
    :param reports: Certifier name -> report.
    :param omega_profile: l over all principal submatrices.
    :return : ClassificationReport instance.
    :return: A full classification.
    """

    matrix: Matrix
    table: MinorTable
    spectrum: Spectrum
    l: ExtendedReal
    reports: Dict[str, ClassReport]
    omega_profile: OmegaProfile
    labels: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        labels = {label: self.reports[key].verdict == PASS for label, key in LABELS.items()}
        labels["GKKtau"] = labels["GKK"] and labels["tau"]
        object.__setattr__(self, "labels", labels)

    @property
    def marginal(self) -> List[str]:
        """Names of certifiers whose margin sits in the marginal band."""
        return [name for name, r in self.reports.items() if r.marginal]

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize classification to dictionary.

        :return : Dictionary representation.
        :return: Dict with matrix, spectrum, table, reports and labels.
        """
        return {
            "matrix": self.matrix.to_dict(),
            "spectrum": self.spectrum.to_dict(),
            "l": encode_real(self.l),
            "table": self.table.to_dict(),
            "l_values": self.omega_profile.to_dict()["l_values"],
            "reports": {name: r.to_dict() for name, r in self.reports.items()},
            "labels": self.labels,
            "marginal": self.marginal,
        }


def classify(A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> ClassificationReport:
    """
    Run every certifier on A.

    :param A: Matrix.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ClassificationReport.
    :return: Table, spectrum, omega profile and one report per class.
    """
    logger.info(f"Classifying matrix of order {A.n}")
    t = principal_minor_table(A, jobs=jobs)
    s = eigenvalues(A, cfg)
    l = min_real_eigenvalue(s, cfg)
    scale = 1.0 + A.max_abs()
    profile = omega_tau_check(A, cfg, jobs)
    reports = {
        "p": p_matrix_check(t, cfg),
        "gkk": gkk_check(A, t, cfg, jobs),
        "strict-gkk": strict_gkk_check(A, t, cfg, jobs),
        "sign-sym": sign_symmetric_check(A, cfg, jobs),
        "omega": profile.omega,
        "tau": profile.tau,
        "m": m_matrix_check(A, t, cfg),
        "stable": stability_check(s, cfg, scale),
        "varga": varga_cone_check(s, l, A.n, cfg, scale),
        "hf": hadamard_fischer_check(t, cfg),
        "newton": newton_check(t.c, cfg),
    }
    report = ClassificationReport(
        matrix=A, table=t, spectrum=s, l=l, reports=reports, omega_profile=profile
    )
    logger.info(f"Labels: {', '.join(k for k, v in report.labels.items() if v) or 'none'}")
    return report


def _table_check(fn: Callable[[MinorTable, ToleranceConfig], ClassReport]) -> Callable[..., ClassReport]:
    return lambda A, cfg, jobs: fn(principal_minor_table(A, jobs=jobs), cfg)


def _varga(A: Matrix, cfg: ToleranceConfig, jobs: int) -> ClassReport:
    s = eigenvalues(A, cfg)
    return varga_cone_check(s, min_real_eigenvalue(s, cfg), A.n, cfg, 1.0 + A.max_abs())


CHECKS: Dict[str, Callable[[Matrix, ToleranceConfig, int], ClassReport]] = {
    "p": _table_check(p_matrix_check),
    "gkk": lambda A, cfg, jobs: gkk_check(A, principal_minor_table(A, jobs=jobs), cfg, jobs),
    "strict-gkk": lambda A, cfg, jobs: strict_gkk_check(A, principal_minor_table(A, jobs=jobs), cfg, jobs),
    "sign-sym": sign_symmetric_check,
    "omega": lambda A, cfg, jobs: omega_tau_check(A, cfg, jobs).omega,
    "tau": lambda A, cfg, jobs: omega_tau_check(A, cfg, jobs).tau,
    "stable": lambda A, cfg, jobs: stability_check(eigenvalues(A, cfg), cfg, 1.0 + A.max_abs()),
    "varga": _varga,
    "hf": _table_check(hadamard_fischer_check),
    "newton": lambda A, cfg, jobs: newton_check(principal_minor_table(A, jobs=jobs).c, cfg),
    "m": lambda A, cfg, jobs: m_matrix_check(A, principal_minor_table(A, jobs=jobs), cfg),
}

CHECK_NAMES = tuple(CHECKS)


def run_check(name: str, A: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> ClassReport:
    """
    Run one named certifier.

    :param name: One of CHECK_NAMES.
    :param A: Matrix.
    :param cfg: Tolerances.
    :param jobs: Worker count.
    :return : ClassReport.
    :return: The certifier's report.
    """
    if name not in CHECKS:
        raise ConfigError(f"Unknown check '{name}', expected one of {', '.join(CHECK_NAMES)}")
    return CHECKS[name](A, cfg, jobs)
