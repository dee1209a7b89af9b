"""
gkk_tau: certification and exploration of GKK and tau matrix classes.

This package certifies membership of real square matrices in the P, GKK,
strict GKK, sign-symmetric, omega, tau and M classes, evaluates stability,
Varga cone, Hadamard-Fischer, Newton and interlacing conditions, and runs
seeded randomized searches inside these classes.

Main components:
- models: Matrix, minor tables, reports and search/assignment results
- linalg: determinants, spectra and characteristic polynomials
- minors: principal-minor tables and dispersal pairs
- classify: class certifiers
- interlace: root interlacing decided three ways
- search: class samplers, hill descent and frontier surveys
- assign: principal-minor assignment
- io: file formats and report emission
- cli: Command-line interface

:return : Package initialization.
:return: Module exports for public API.
"""

__version__ = "0.1.0"
__author__ = "gkk-tau Team"

from gkk_tau.config import ToleranceConfig
from gkk_tau.models.matrix import Matrix, Spectrum
from gkk_tau.models.minors import IndexSet, MinorTable, TargetMinorTable
from gkk_tau.models.reports import ClassReport, InterlaceReport

__all__ = [
    "ClassReport",
    "IndexSet",
    "InterlaceReport",
    "Matrix",
    "MinorTable",
    "Spectrum",
    "TargetMinorTable",
    "ToleranceConfig",
]
