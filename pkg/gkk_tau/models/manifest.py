"""
Run manifest embedded in every emitted report.

:return : Manifest model.
:return: RunManifest.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional

from gkk_tau.config import DEFAULT_TOLERANCES, ToleranceConfig

SCHEMA_VERSION = "1.0"

OutputFormat = Literal["json", "text"]


@dataclass(frozen=True)
class RunManifest:
    """
    Everything needed to reproduce a report.

    :param command: Sub-command name.
    :param inputs: Input file paths.
    :param tolerances: Tolerances in force.
    :param seed: Seed, if the command is randomized.
    :param output_format: json or text.
    :param version: Artifact version.
    :param options: Remaining command options.
    :return : RunManifest instance.
    :return: A run manifest.
    """

    command: str
    inputs: List[str] = field(default_factory=list)
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES
    seed: Optional[int] = None
    output_format: OutputFormat = "json"
    version: str = ""
    options: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "tolerances": self.tolerances.to_dict(),
            "seed": self.seed,
            "output_format": self.output_format,
            "version": self.version,
            "options": self.options,
        }
