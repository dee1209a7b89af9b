"""
I/O module.

:return : Module initialization.
:return: Exports for file loading and report emission.
"""

from gkk_tau.io.files import (
    emit_report,
    load_matrix,
    load_minor_table,
    load_polynomial,
    load_targets,
    minor_table_from_json,
    minor_table_to_json,
    write_frame_csv,
    write_output,
)

__all__ = [
    "emit_report",
    "load_matrix",
    "load_minor_table",
    "load_polynomial",
    "load_targets",
    "minor_table_from_json",
    "minor_table_to_json",
    "write_frame_csv",
    "write_output",
]
