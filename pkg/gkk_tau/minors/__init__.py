"""
Minor engine module.

:return : Module initialization.
:return: Exports for principal-minor tables, general minors and dispersal pairs.
"""

from gkk_tau.minors.engine import (
    char_poly_from_table,
    dispersal,
    dispersal_pair_arrays,
    mean_minor_sums,
    minor,
    pairs_with_dispersal,
    principal_minor_table,
)

__all__ = [
    "char_poly_from_table",
    "dispersal",
    "dispersal_pair_arrays",
    "mean_minor_sums",
    "minor",
    "pairs_with_dispersal",
    "principal_minor_table",
]
