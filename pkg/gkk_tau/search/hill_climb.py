"""
Seeded stochastic hill descent inside matrix classes.

:return : Search engine.
:return: extremal_search, approximate_by_strict_gkk, dispersal_profile.
"""

from typing import Any, Dict, List, Tuple
from dataclasses import dataclass
import logging
import time

import numpy as np

from gkk_tau.classify.checks import dispersal_sign_check, newton_check, stability_check, strict_gkk_check
from gkk_tau.classify.report import classify
from gkk_tau.config import DEFAULT_TOLERANCES, PASS, ToleranceConfig
from gkk_tau.errors import InvariantViolation
from gkk_tau.linalg.core import eigenvalues
from gkk_tau.models.matrix import Matrix
from gkk_tau.models.search import (
    ApproximationResult,
    DispersalProfile,
    MatrixClass,
    Objective,
    SearchConfig,
    SearchResult,
)
from gkk_tau.parallel import parallel_map, rng_for
from gkk_tau.search.classes import (
    OBJECTIVES,
    Candidate,
    candidate_membership,
    is_member,
    sample_member,
)

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 10000
NEWTON_SLACK = 1e-10


@dataclass(frozen=True)
class _ChainOutcome:
    restart: int
    best: Matrix
    best_objective: float
    trace: List[float]
    marginal: bool
    accepted: int


def _on_sphere(a: np.ndarray) -> np.ndarray:
    return a / np.max(np.abs(a))


def _perturbation(rng: np.random.Generator, n: int, step: float, symmetric: bool) -> np.ndarray:
    noise = step * rng.standard_normal((n, n))
    if symmetric:
        noise = (noise + noise.T) / 2.0
    return noise


def _check_visited(matrix_class: MatrixClass, c: Candidate) -> None:
    """Mid-search invariant: real spectra satisfy Newton's inequalities."""
    if matrix_class != MatrixClass.REAL_SPECTRUM:
        return
    report = newton_check(c.table.c, c.cfg)
    if report.margin < -NEWTON_SLACK * report.details["scale"]:
        raise InvariantViolation(
            f"Real-spectrum member violates Newton's inequalities (margin {report.margin:.3e}): {c.matrix.to_dict()}"
        )


def _run_chain(
    restart: int,
    matrix_class: MatrixClass,
    objective: Objective,
    cfg: SearchConfig,
    tol: ToleranceConfig,
) -> _ChainOutcome:
    rng = rng_for(cfg.seed, restart)
    n = cfg.n
    symmetric = matrix_class == MatrixClass.HPD
    start = sample_member(matrix_class, n, rng, cfg.start_budget, tol, cfg.require_stable)
    current = Candidate(Matrix(_on_sphere(start.entries)), tol)
    member, marginal = candidate_membership(matrix_class, current, cfg.require_stable)
    if not member:
        # rescaling moved a boundary member out; keep the unscaled start
        current = Candidate(start, tol)
        marginal = candidate_membership(matrix_class, current, cfg.require_stable)[1]
    value = OBJECTIVES[objective](current)
    trace = [value]
    accepted = 0
    t0 = time.time()

    for i in range(cfg.iterations):
        if (i + 1) % PROGRESS_EVERY == 0:
            elapsed = time.time() - t0
            rate = (i + 1) / elapsed if elapsed > 0 else 0
            eta = (cfg.iterations - i - 1) / rate if rate > 0 else 0
            logger.info(
                f"Restart {restart}: iteration {i + 1}/{cfg.iterations}, best {value:.6e} "
                f"({rate:.1f} it/sec, ETA: {eta:.1f}s)"
            )
        raw = current.matrix.entries + _perturbation(rng, n, cfg.step_at(i), symmetric)
        if not np.all(np.isfinite(raw)) or np.max(np.abs(raw)) == 0:
            continue
        cand = Candidate(Matrix(_on_sphere(raw)), tol)
        ok, cand_marginal = candidate_membership(matrix_class, cand, cfg.require_stable)
        if ok:
            _check_visited(matrix_class, cand)
            cand_value = OBJECTIVES[objective](cand)
            if cand_value < value:
                current, value, marginal = cand, cand_value, cand_marginal
                accepted += 1
        if (i + 1) % cfg.trace_every == 0:
            trace.append(value)

    logger.info(f"Restart {restart}: best {value:.6e} after {accepted} accepted moves")
    return _ChainOutcome(restart, current.matrix, value, trace, marginal, accepted)


def extremal_search(
    matrix_class: MatrixClass,
    objective: Objective,
    cfg: SearchConfig,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    jobs: int = 1,
) -> SearchResult:
    """
    Minimize an objective over a class by seeded hill descent.

    Every restart draws a starting member, rescales it to max |entry| = 1
    and perturbs it entry-wise with the decaying step schedule. Candidates
    leaving the class are rejected; the rest are accepted when they strictly
    decrease the objective. Restarts use independent keyed streams, so the
    result depends only on (seed, config), never on jobs.

    :param matrix_class: Class walked in.
    :param objective: Objective minimized.
    :param cfg: Search configuration.
    :param tol: Tolerances.
    :param jobs: Concurrent restarts.
    :return : SearchResult.
    :return: Best member over all restarts with its classify audit.
    """
    logger.info(
        f"Searching {matrix_class.value} for {objective.value} at n={cfg.n}: "
        f"{cfg.restarts} restarts x {cfg.iterations} iterations, seed {cfg.seed}"
    )
    outcomes = parallel_map(
        lambda r: _run_chain(r, matrix_class, objective, cfg, tol), range(cfg.restarts), jobs
    )
    winner = min(outcomes, key=lambda o: (o.best_objective, o.restart))

    member, _ = is_member(matrix_class, winner.best, tol)
    if not member:
        raise InvariantViolation(f"Best matrix of restart {winner.restart} left {matrix_class.value}")
    recomputed = OBJECTIVES[objective](Candidate(winner.best, tol))
    if np.isfinite(recomputed) and abs(recomputed - winner.best_objective) > tol.tol_rel * max(1.0, abs(recomputed)):
        raise InvariantViolation(f"Objective drifted: {winner.best_objective} vs {recomputed}")

    audit = classify(winner.best, tol).to_dict()
    audit["search_marginal"] = winner.marginal
    return SearchResult(
        matrix_class=matrix_class,
        objective=objective,
        best=winner.best,
        best_objective=winner.best_objective,
        trace=winner.trace,
        membership_audit=audit,
        seed=cfg.seed,
        config=cfg,
        restart=winner.restart,
        restart_objectives=[o.best_objective for o in outcomes],
        marginal=winner.marginal,
    )


def _approximation_score(c: Candidate, require_tau: bool) -> Tuple[float, bool]:
    """Strictness margin (and tau margin, if required) plus membership."""
    strict = strict_gkk_check(c.matrix, c.table, c.cfg)
    score, found = strict.margin, strict.verdict == PASS
    if require_tau:
        tau = c.profile.tau
        score = min(score, tau.margin)
        found = found and tau.verdict == PASS
    return score, found


def _structured_proposals(A: Matrix, epsilon: float) -> List[np.ndarray]:
    """Deterministic first guesses: equal positive off-diagonal nudges."""
    n = A.n
    off = np.ones((n, n)) - np.eye(n)
    return [A.entries + epsilon / 2.0 * off, A.entries + epsilon * off, A.entries + epsilon * np.eye(n)]


def _into_ball(raw: np.ndarray, center: np.ndarray, epsilon: float) -> np.ndarray:
    """Clip into the closed max-entry ball so that the computed distance is at most epsilon."""
    out = np.clip(raw, center - epsilon, center + epsilon)
    over = np.abs(out - center) > epsilon
    while np.any(over):
        # center +- epsilon can round outward by an ulp
        out[over] = np.nextafter(out[over], center[over])
        over = np.abs(out - center) > epsilon
    return out


def approximate_by_strict_gkk(

    A: Matrix,
    epsilon: float,
    seed: int = 0,
    iterations: int = 2000,
    require_tau: bool = False,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ApproximationResult:
    """
    Look for a strict GKK matrix within max-entry distance epsilon of A.

    A itself is tried first, then a few structured nudges, then a seeded
    hill ascent on the strictness margin confined to the epsilon-ball.
    Not finding one is a legitimate outcome reported with the best margin.

    :param A: Center of the ball.
    :param epsilon: Radius in the max-entry metric.
    :param seed: Seed.
    :param iterations: Random proposals.
    :param require_tau: Also require tau membership.
    :param tol: Tolerances.
    :return : ApproximationResult.
    :return: Best candidate, its distance and margin.
    """
    rng = rng_for(seed)
    best = Candidate(A, tol)
    best_score, found = _approximation_score(best, require_tau)
    evaluations = 1

    if not found:
        for raw in _structured_proposals(A, epsilon):
            cand = Candidate(Matrix(_into_ball(raw, A.entries, epsilon)), tol)
            score, ok = _approximation_score(cand, require_tau)
            evaluations += 1
            if ok or score > best_score:
                best, best_score, found = cand, score, ok
            if found:
                break

    i = 0
    while not found and i < iterations:
        step = epsilon * max(0.5 * 0.999**i, 0.01)
        raw = _into_ball(best.matrix.entries + step * rng.standard_normal((A.n, A.n)), A.entries, epsilon)
        cand = Candidate(Matrix(raw), tol)
        score, ok = _approximation_score(cand, require_tau)
        evaluations += 1
        if ok or score > best_score:
            best, best_score, found = cand, score, ok
        i += 1

    distance = A.distance(best.matrix)
    logger.info(
        f"Strict GKK approximation {'found' if found else 'not found'} at distance {distance:.3e} "
        f"after {evaluations} evaluations (margin {best_score:.3e})"
    )
    return ApproximationResult(
        found=found,
        best=best.matrix,
        distance=distance,
        best_margin=best_score,
        epsilon=epsilon,
        require_tau=require_tau,
        seed=seed,
        evaluations=evaluations,
        audit=classify(best.matrix, tol).to_dict(),
    )


def dispersal_profile(A: Matrix, tol: ToleranceConfig = DEFAULT_TOLERANCES, jobs: int = 1) -> DispersalProfile:
    """
    Sign-condition margin for every dispersal bound d = 1..n.

    :param A: Matrix.
    :param tol: Tolerances.
    :param jobs: Worker count.
    :return : DispersalProfile.
    :return: Per-d reports, the largest satisfied d and the stability verdict.
    """
    entries: List[Dict[str, Any]] = []
    largest_d = 0
    for d in range(1, A.n + 1):
        report = dispersal_sign_check(A, d, False, tol, jobs)
        entries.append(
            {
                "d": d,
                "verdict": report.verdict,
                "margin": report.margin,
                "checked_count": report.checked_count,
                "witness": report.witness,
            }
        )
        if report.verdict == PASS and largest_d == d - 1:
            largest_d = d
    stable = stability_check(eigenvalues(A, tol), tol, 1.0 + A.max_abs())
    return DispersalProfile(
        n=A.n,
        entries=entries,
        largest_d=largest_d,
        stable=stable.verdict,
        stability_margin=stable.margin,
    )
