"""
Tolerance configuration shared by every certifier.

All threshold comparisons go through ToleranceConfig.judge so tolerances
are changed in one place. A named profile can be selected through the
GKK_TAU_TOLERANCE_PROFILE environment variable.

:return : Configuration utilities.
:return: ToleranceConfig, tolerance profiles and the Verdict type.
"""

from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Literal, Tuple
import logging
import math
import os

from gkk_tau.errors import ConfigError

logger = logging.getLogger(__name__)

Verdict = Literal["pass", "fail", "undefined"]
PASS: Verdict = "pass"
FAIL: Verdict = "fail"
UNDEFINED: Verdict = "undefined"

PROFILE_ENV_VAR = "GKK_TAU_TOLERANCE_PROFILE"


@dataclass(frozen=True)
class ToleranceConfig:
    """
    Numerical tolerances, all dimensionless.

    :param tol_zero: Absolute threshold for treating a computed value as zero.
    :param tol_real: Threshold for treating an eigenvalue as real.
    :param tol_rel: Relative comparison slack.
    :param tol_cluster: Root separation below which interlacing decisions are ambiguous.
    :param marginal_factor: Width of the marginal band in units of the threshold.
    :return : ToleranceConfig instance.
    :return: Immutable tolerance bundle.
    """

    tol_zero: float = 1e-12
    tol_real: float = 1e-9
    tol_rel: float = 1e-8
    tol_cluster: float = 1e-6
    marginal_factor: float = 10.0

    def __post_init__(self) -> None:
        for name in ("tol_zero", "tol_real", "tol_rel", "tol_cluster", "marginal_factor"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ConfigError(f"{name} must be strictly positive and finite, got {value}")
        if self.tol_rel >= 1:
            raise ConfigError(f"tol_rel must be < 1, got {self.tol_rel}")

    def judge(self, margin: float, scale: float = 1.0, strict: bool = False) -> Tuple[Verdict, bool]:
        """
        Threshold a margin into a verdict.

        Non-strict conditions pass when margin >= -tol_zero*scale, strict ones
        when margin > tol_zero*scale. A finite margin within marginal_factor
        thresholds of zero is flagged marginal.

        :param margin: Smallest slack over the checked conditions.
        :param scale: Magnitude the threshold is scaled by.
        :param strict: Whether the condition is a strict inequality.
        :return : Tuple (verdict, marginal).
        :return: Verdict and marginal flag.
        """
        threshold = self.tol_zero * max(scale, 1.0)
        if math.isnan(margin):
            return UNDEFINED, False
        passed = margin > threshold if strict else margin >= -threshold
        marginal = math.isfinite(margin) and abs(margin) <= self.marginal_factor * threshold
        return (PASS if passed else FAIL), marginal

    def is_zero(self, value: float, scale: float = 1.0) -> bool:
        """
        Whether value is zero up to tol_zero*scale.

        :param value: Real or complex value.
        :param scale: Magnitude scale.
        :return : Boolean.
        :return: True if |value| <= tol_zero*max(scale, 1).
        """
        return abs(value) <= self.tol_zero * max(scale, 1.0)

    def is_real(self, z: complex) -> bool:
        """
        Realness test |Im z| <= tol_real*(1+|z|).

        :param z: Complex number.
        :return : Boolean.
        :return: True if z counts as real.
        """
        return abs(z.imag) <= self.tol_real * (1.0 + abs(z))

    def to_dict(self) -> Dict[str, float]:
        """
        Serialize tolerances to dictionary.

        :return : Dictionary representation.
        :return: Dict of tolerance fields.
        """
        return asdict(self)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "ToleranceConfig":
        """
        Deserialize tolerances from dictionary.

        :param data: Dictionary of tolerance fields; missing keys take defaults.
        :return : ToleranceConfig instance.
        :return: Reconstructed config.
        """
        known = {k: float(v) for k, v in data.items() if k in ToleranceConfig.__dataclass_fields__}
        return ToleranceConfig(**known)

    @staticmethod
    def from_profile(name: str) -> "ToleranceConfig":
        """
        Look up a named tolerance profile.

        :param name: One of the keys of TOLERANCE_PROFILES.
        :return : ToleranceConfig instance.
        :return: The profile's tolerances.
        """
        try:
            return TOLERANCE_PROFILES[name]
        except KeyError:
            raise ConfigError(
                f"Unknown tolerance profile '{name}' (known: {', '.join(sorted(TOLERANCE_PROFILES))})"
            ) from None

    @staticmethod
    def from_env() -> "ToleranceConfig":
        """
        Tolerances selected by GKK_TAU_TOLERANCE_PROFILE, default profile if unset.

        :return : ToleranceConfig instance.
        :return: Environment-selected tolerances.
        """
        name = os.environ.get(PROFILE_ENV_VAR, "default")
        logger.debug(f"Tolerance profile from environment: {name}")
        return ToleranceConfig.from_profile(name)

    def with_overrides(self, **overrides: float) -> "ToleranceConfig":
        """
        Copy with some fields replaced.

        :param overrides: Field values to replace.
        :return : ToleranceConfig instance.
        :return: Modified copy.
        """
        return replace(self, **overrides)


DEFAULT_TOLERANCES = ToleranceConfig()

TOLERANCE_PROFILES: Dict[str, ToleranceConfig] = {
    "default": DEFAULT_TOLERANCES,
    "strict": ToleranceConfig(tol_zero=1e-14, tol_real=1e-11, tol_rel=1e-10, tol_cluster=1e-8),
    "loose": ToleranceConfig(tol_zero=1e-9, tol_real=1e-7, tol_rel=1e-6, tol_cluster=1e-5),
}
