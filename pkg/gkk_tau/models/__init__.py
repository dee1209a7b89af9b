"""
Models module for domain objects.

:return : Module initialization.
:return: Exports for matrices, minor tables, reports and run results.
"""

from gkk_tau.models.assignment import AssignmentResult, FitConfig
from gkk_tau.models.manifest import SCHEMA_VERSION, RunManifest
from gkk_tau.models.matrix import INF, Matrix, Spectrum
from gkk_tau.models.minors import DispersalPair, IndexSet, MinorTable, TargetMinorTable
from gkk_tau.models.polynomial import RealPolynomial
from gkk_tau.models.reports import ClassReport, InterlaceReport, OmegaProfile
from gkk_tau.models.search import (
    ApproximationResult,
    DispersalProfile,
    MatrixClass,
    Objective,
    SearchConfig,
    SearchResult,
    SurveyConfig,
)

__all__ = [
    "INF",
    "SCHEMA_VERSION",
    "ApproximationResult",
    "AssignmentResult",
    "ClassReport",
    "DispersalPair",
    "DispersalProfile",
    "FitConfig",
    "IndexSet",
    "InterlaceReport",
    "Matrix",
    "MatrixClass",
    "MinorTable",
    "Objective",
    "OmegaProfile",
    "RealPolynomial",
    "RunManifest",
    "SearchConfig",
    "SearchResult",
    "Spectrum",
    "SurveyConfig",
    "TargetMinorTable",
]
