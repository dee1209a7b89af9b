"""
Certifier report models.

Every class test returns a ClassReport: a verdict derived from a numeric
margin, plus a witness locating the binding or violated condition.

:return : Report model components.
:return: Classes ClassReport, OmegaProfile and InterlaceReport.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional

from gkk_tau.config import FAIL, PASS, Verdict
from gkk_tau.errors import InvariantViolation
from gkk_tau.models.matrix import ExtendedReal, decode_real, encode_real
from gkk_tau.models.minors import IndexSet

Witness = Dict[str, Any]


@dataclass(frozen=True)
class ClassReport:
    """
    Outcome of one certifier.

    A margin whose sign disagrees with the verdict, which happens only
    within tolerance of zero, is reported as 0 and the computed value is
    kept in details["raw_margin"].

    :param name: Certifier name (e.g. "p", "gkk", "hf").
    :param verdict: pass, fail or undefined.
    :param margin: Smallest slack over all checked conditions.
    :param witness: Locator of the binding or violated condition.
    :param checked_count: Number of conditions evaluated.
    :param marginal: Whether the margin sits within the marginal band.
    :param details: Certifier-specific extras (thresholds, normalization).
    :return : ClassReport instance.
    :return: A certifier report.
    """

    name: str
    verdict: Verdict
    margin: float
    witness: Optional[Witness] = None
    checked_count: int = 0
    marginal: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict == FAIL and self.witness is None:
            raise InvariantViolation(f"Failing report '{self.name}' must carry a witness")
        if (self.verdict == PASS and self.margin < 0) or (self.verdict == FAIL and self.margin > 0):
            # within tolerance of zero but on the wrong side of it for the verdict
            object.__setattr__(self, "details", {**self.details, "raw_margin": self.margin})
            object.__setattr__(self, "margin", 0.0)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize report to dictionary.

        :return : Dictionary representation.
        :return: Dict with verdict, margin, witness, marginal flag and extras.
        """
        return {
            "name": self.name,
            "verdict": self.verdict,
            "margin": encode_real(self.margin),
            "witness": self.witness,
            "checked_count": self.checked_count,
            "marginal": self.marginal,
            "details": self.details,
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "ClassReport":
        """
        Deserialize report from dictionary.

        :param data: Dictionary produced by to_dict.
        :return : ClassReport instance.
        :return: Reconstructed report.
        """
        return ClassReport(
            name=data["name"],
            verdict=data["verdict"],
            margin=decode_real(data["margin"]),
            witness=data.get("witness"),
            checked_count=int(data.get("checked_count", 0)),
            marginal=bool(data.get("marginal", False)),
            details=dict(data.get("details", {})),
        )


def subset_witness(alpha: IndexSet) -> Witness:
    """Witness naming one index set."""
    return {"kind": "subset", "subset": alpha.to_dict()}


def pair_witness(alpha: IndexSet, beta: IndexSet, kind: str = "pair") -> Witness:
    """Witness naming two index sets."""
    return {"kind": kind, "alpha": alpha.to_dict(), "beta": beta.to_dict()}


def eigenvalue_witness(value: complex) -> Witness:
    """Witness naming one eigenvalue."""
    return {"kind": "eigenvalue", "value": [float(value.real), float(value.imag)]}


@dataclass(frozen=True)
class OmegaProfile:
    """
    l(A(alpha)) over all nonempty alpha with the omega and tau verdicts.

    :param n: Order.
    :param l_values: Map mask -> l(A(alpha)), +inf when no real eigenvalue.
    :param omega: Eigenvalue-monotonicity report.
    :param tau: Omega plus l(A) >= 0 report.
    :return : OmegaProfile instance.
    :return: An omega/tau profile.
    """

    n: int
    l_values: Dict[int, ExtendedReal]
    omega: ClassReport
    tau: ClassReport

    def __post_init__(self) -> None:
        if self.tau.verdict == PASS and self.omega.verdict != PASS:
            raise InvariantViolation("tau can only pass when omega passes")

    def l_of(self, alpha: IndexSet) -> ExtendedReal:
        """l(A(alpha)) for a nonempty index set."""
        return self.l_values[alpha.mask]

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize profile to dictionary.

        :return : Dictionary representation.
        :return: Dict with l-values keyed by decimal mask and both reports.
        """
        return {
            "n": self.n,
            "l_values": {str(mask): encode_real(v) for mask, v in sorted(self.l_values.items())},
            "omega": self.omega.to_dict(),
            "tau": self.tau.to_dict(),
        }


InterlaceMethod = Literal["roots-direct", "hermite-biehler", "hurwitz"]
Side = Literal["upper", "lower", "mixed"]


@dataclass(frozen=True)
class InterlaceReport:
    """
    Outcome of one interlacing test.

    :param verdict: pass, fail or undefined.
    :param method: roots-direct, hermite-biehler or hurwitz.
    :param side: Half plane of the roots of p + iq, when the method decides it.
    :param details: Root lists or minor signs.
    :return : InterlaceReport instance.
    :return: An interlacing report.
    """

    verdict: Verdict
    method: InterlaceMethod
    side: Optional[Side] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """
        Serialize report to dictionary.

        :return : Dictionary representation.
        :return: Dict with verdict, method, side and details.
        """
        return {
            "verdict": self.verdict,
            "method": self.method,
            "side": self.side,
            "details": self.details,
        }


def roots_to_list(roots: Any) -> List[List[float]]:
    """Complex roots as [re, im] pairs for JSON."""
    return [[float(complex(z).real), float(complex(z).imag)] for z in roots]
