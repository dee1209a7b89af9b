"""
CLI module.

:return : Module initialization.
:return: Exports the command-line entry point.
"""

from gkk_tau.cli.main import main

__all__ = ["main"]
