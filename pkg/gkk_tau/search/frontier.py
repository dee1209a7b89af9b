"""
Per-order frontier survey of a matrix class.

For each order the survey samples class members and counts how many are
stable, satisfy the Varga cone condition, are stable while violating it,
violate Newton's inequalities, or are P-matrices satisfying Newton's
inequalities while unstable. It accumulates evidence only.

:return : Frontier survey.
:return: class_frontier_survey.
"""

from typing import Any, Dict, List
import logging
import time

import numpy as np
import pandas as pd

from gkk_tau.classify.checks import newton_check, stability_check, varga_cone_check
from gkk_tau.config import DEFAULT_TOLERANCES, FAIL, PASS, UNDEFINED, ToleranceConfig
from gkk_tau.errors import BudgetExhaustedError
from gkk_tau.models.search import SurveyConfig
from gkk_tau.parallel import parallel_map, rng_for
from gkk_tau.search.classes import Candidate, sample_member

logger = logging.getLogger(__name__)

SURVEY_COLUMNS = [
    "order",
    "samples",
    "members",
    "exhausted",
    "stable",
    "varga_pass",
    "varga_undefined",
    "stable_not_varga",
    "newton_fail",
    "p_newton_unstable",
    "min_stability_margin",
    "min_varga_margin",
    "min_newton_margin",
]


def _observe(config: SurveyConfig, order: int, index: int, tol: ToleranceConfig) -> Dict[str, Any]:
    rng = rng_for(config.seed, order, index)
    try:
        A = sample_member(config.matrix_class, order, rng, config.budget, tol)
    except BudgetExhaustedError:
        return {"member": False}
    c = Candidate(A, tol)
    stable = stability_check(c.spectrum, tol, c.scale)
    varga = varga_cone_check(c.spectrum, c.l, order, tol, c.scale)
    newton = newton_check(c.table.c, tol)
    return {
        "member": True,
        "stable": stable.verdict == PASS,
        "stability_margin": stable.margin,
        "varga": varga.verdict,
        "varga_margin": varga.margin,
        "newton": newton.verdict == PASS,
        "newton_margin": newton.margin,
        "p": c.p().verdict == PASS,
    }


def _summarize(order: int, samples: int, rows: List[Dict[str, Any]]) -> Dict[str, Any]:
    members = [r for r in rows if r["member"]]

    def count(pred) -> int:
        return sum(1 for r in members if pred(r))

    def smallest(key: str) -> float:
        return float(min((r[key] for r in members), default=np.nan))

    return {
        "order": order,
        "samples": samples,
        "members": len(members),
        "exhausted": samples - len(members),
        "stable": count(lambda r: r["stable"]),
        "varga_pass": count(lambda r: r["varga"] == PASS),
        "varga_undefined": count(lambda r: r["varga"] == UNDEFINED),
        "stable_not_varga": count(lambda r: r["stable"] and r["varga"] == FAIL),
        "newton_fail": count(lambda r: not r["newton"]),
        "p_newton_unstable": count(lambda r: r["p"] and r["newton"] and not r["stable"]),
        "min_stability_margin": smallest("stability_margin"),
        "min_varga_margin": smallest("varga_margin"),
        "min_newton_margin": smallest("newton_margin"),
    }


def class_frontier_survey(
    config: SurveyConfig, tol: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1
) -> pd.DataFrame:
    """
    Empirical frontier data for a class, one row per order.

    Sample i at order n uses the stream (seed, n, i), so rows do not depend
    on jobs or on which other orders are surveyed.

    :param config: Survey configuration.
    :param tol: Tolerances.
    :param jobs: Worker count.
    :return : DataFrame.
    :return: Counts and extremal margins per order (columns SURVEY_COLUMNS).
    """
    rows = []
    for order in config.orders:
        t0 = time.time()
        observed = parallel_map(
            lambda i: _observe(config, order, i, tol), range(config.samples), jobs
        )
        summary = _summarize(order, config.samples, observed)
        logger.info(
            f"Surveyed {config.matrix_class.value} at n={order}: {summary['members']}/{config.samples} members, "
            f"{summary['stable']} stable ({time.time() - t0:.1f}s)"
        )
        rows.append(summary)
    return pd.DataFrame(rows, columns=SURVEY_COLUMNS)
