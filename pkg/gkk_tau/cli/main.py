"""
Command-line interface for gkk_tau.

Provides commands for classification, single checks, minor tables,
dispersal profiles, searches, strict-GKK approximation, minor assignment,
interlacing and frontier surveys.

Exit codes: 0 pass/success, 1 fail, 2 undefined or degenerate,
3 usage/input error, 4 cap or budget error.

:return : CLI commands.
:return: Main entry point for command-line usage.
"""

from typing import Any, Callable, Dict, List, Optional
import argparse
import logging
import sys

from gkk_tau import __version__
from gkk_tau.assign.fit import assignment_residual, fit_matrix_to_minors, hf_feasibility
from gkk_tau.classify.checks import dispersal_sign_check
from gkk_tau.classify.report import CHECK_NAMES, classify, run_check
from gkk_tau.config import FAIL, PASS, ToleranceConfig, Verdict
from gkk_tau.errors import CapError, DegeneracyError, GkkTauError, InputError
from gkk_tau.interlace.polynomials import hermite_biehler_same_side, hurwitz_interlace, interlace_check_roots
from gkk_tau.io.files import emit_report, load_matrix, load_polynomial, load_targets, write_frame_csv, write_output
from gkk_tau.minors.engine import principal_minor_table
from gkk_tau.models.assignment import FitConfig
from gkk_tau.models.manifest import RunManifest
from gkk_tau.models.search import SearchConfig, SurveyConfig, parse_class, parse_objective
from gkk_tau.search.frontier import class_frontier_survey
from gkk_tau.search.hill_climb import approximate_by_strict_gkk, dispersal_profile, extremal_search

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNDEFINED = 2
EXIT_INPUT = 3
EXIT_CAP = 4

INTERLACE_METHODS = {
    "roots-direct": interlace_check_roots,
    "hermite-biehler": hermite_biehler_same_side,
    "hurwitz": hurwitz_interlace,
}

# Options that never change a report's content.
_RUNTIME_OPTIONS = {"func", "jobs", "out", "csv", "verbose", "debug", "format", "tol_profile", "command"}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors surface as InputError (exit 3)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(f"{self.prog}: {message}")


def verdict_exit(verdict: Verdict) -> int:
    """Exit code for a verdict."""
    if verdict == PASS:
        return EXIT_PASS
    if verdict == FAIL:
        return EXIT_FAIL
    return EXIT_UNDEFINED


def _tolerances(args: argparse.Namespace) -> ToleranceConfig:
    if args.tol_profile:
        return ToleranceConfig.from_profile(args.tol_profile)
    return ToleranceConfig.from_env()


def _manifest(args: argparse.Namespace, cfg: ToleranceConfig, inputs: List[str], seed: Optional[int] = None) -> RunManifest:
    options = {k: v for k, v in sorted(vars(args).items()) if k not in _RUNTIME_OPTIONS}
    return RunManifest(
        command=args.command,
        inputs=inputs,
        tolerances=cfg,
        seed=seed,
        output_format=args.format,
        version=__version__,
        options=options,
    )


def _emit(args: argparse.Namespace, report: Dict[str, Any], manifest: RunManifest) -> None:
    write_output(emit_report(report, args.format, manifest), args.out)


def cmd_classify(args: argparse.Namespace) -> int:
    """
    Run every certifier on a matrix.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: 0 once the report is emitted.
    """
    cfg = _tolerances(args)
    A = load_matrix(args.matrix, args.matrix_format)
    report = classify(A, cfg, args.jobs)
    _emit(args, report.to_dict(), _manifest(args, cfg, [args.matrix]))
    return EXIT_PASS


def cmd_minors(args: argparse.Namespace) -> int:
    """
    Emit the principal-minor table of a matrix.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: 0 once the table is emitted.
    """
    cfg = _tolerances(args)
    A = load_matrix(args.matrix, args.matrix_format)
    table = principal_minor_table(A, "exact" if args.exact else "float", args.jobs)
    _emit(args, table.to_dict(), _manifest(args, cfg, [args.matrix]))
    return EXIT_PASS


def cmd_check(args: argparse.Namespace) -> int:
    """
    Run one certifier.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: Verdict exit code.
    """
    cfg = _tolerances(args)
    A = load_matrix(args.matrix, args.matrix_format)
    report = run_check(args.name, A, cfg, args.jobs)
    _emit(args, report.to_dict(), _manifest(args, cfg, [args.matrix]))
    return verdict_exit(report.verdict)


def cmd_dispersal(args: argparse.Namespace) -> int:
    """
    Dispersal sign condition for one d, or the profile over all d.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: Verdict exit code with --d, 0 for the profile.
    """
    cfg = _tolerances(args)
    A = load_matrix(args.matrix, args.matrix_format)
    manifest = _manifest(args, cfg, [args.matrix])
    if args.d is not None:
        report = dispersal_sign_check(A, args.d, args.strict, cfg, args.jobs)
        _emit(args, report.to_dict(), manifest)
        return verdict_exit(report.verdict)
    profile = dispersal_profile(A, cfg, args.jobs)
    if args.csv:
        write_frame_csv(profile.to_frame(), args.csv)
    _emit(args, profile.to_dict(), manifest)
    return EXIT_PASS


def cmd_search(args: argparse.Namespace) -> int:
    """
    Extremal search inside a class.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: 0 once the result is emitted.
    """
    cfg = _tolerances(args)
    config = SearchConfig(
        n=args.n,
        seed=args.seed,
        iterations=args.iters,
        step_init=args.step_init,
        step_decay=args.step_decay,
        step_min=args.step_min,
        restarts=args.restarts,
        start_budget=args.start_budget,
        trace_every=args.trace_every,
        require_stable=args.require_stable,
    )
    result = extremal_search(parse_class(args.matrix_class), parse_objective(args.objective), config, cfg, args.jobs)
    if args.csv:
        write_frame_csv(result.trace_frame(), args.csv)
    _emit(args, result.to_dict(), _manifest(args, cfg, [], args.seed))
    return EXIT_PASS


def cmd_approx_strict(args: argparse.Namespace) -> int:
    """
    Search the epsilon-ball around a matrix for a strict GKK matrix.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: 0 if found, 1 otherwise.
    """
    cfg = _tolerances(args)
    A = load_matrix(args.matrix, args.matrix_format)
    result = approximate_by_strict_gkk(A, args.eps, args.seed, args.iters, args.require_tau, cfg)
    _emit(args, result.to_dict(), _manifest(args, cfg, [args.matrix], args.seed))
    return EXIT_PASS if result.found else EXIT_FAIL


def cmd_assign(args: argparse.Namespace) -> int:
    """
    Fit a matrix to prescribed principal minors.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: 0 if the fit converged, 1 otherwise.
    """
    cfg = _tolerances(args)
    targets = load_targets(args.targets)
    feasibility = hf_feasibility(targets, cfg)
    result = fit_matrix_to_minors(targets, FitConfig(starts=args.starts, seed=args.seed), args.jobs)
    report = {
        "hf_feasibility": feasibility.to_dict(),
        "fit": result.to_dict(),
        "verified_residual": assignment_residual(result.matrix, targets),
    }
    _emit(args, report, _manifest(args, cfg, [args.targets], args.seed))
    return EXIT_PASS if result.converged else EXIT_FAIL


def cmd_interlace(args: argparse.Namespace) -> int:
    """
    Interlacing of the roots of p and q.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: Verdict exit code.
    """
    cfg = _tolerances(args)
    p, q = load_polynomial(args.p), load_polynomial(args.q)
    report = INTERLACE_METHODS[args.method](p, q, cfg)
    _emit(args, report.to_dict(), _manifest(args, cfg, [args.p, args.q]))
    return verdict_exit(report.verdict)


def cmd_survey(args: argparse.Namespace) -> int:
    """
    Per-order frontier survey of a class.

    :param args: Command-line arguments.
    :return : Exit code.
    :return: 0 once the survey is emitted.
    """
    cfg = _tolerances(args)
    config = SurveyConfig(
        matrix_class=parse_class(args.matrix_class),
        orders=tuple(args.orders),
        samples=args.samples,
        seed=args.seed,
        budget=args.budget,
    )
    frame = class_frontier_survey(config, cfg, args.jobs)
    if args.csv:
        write_frame_csv(frame, args.csv)
    report = {"config": config.to_dict(), "rows": frame.to_dict(orient="records")}
    _emit(args, report, _manifest(args, cfg, [], args.seed))
    return EXIT_PASS


def _common_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="Output format (default: json)")
    common.add_argument("--out", help="Write the report to this file instead of stdout")
    common.add_argument("--csv", help="Also write tabular output (profile, trace, survey) as CSV")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads; never changes results (default: 1)")
    common.add_argument(
        "--tol-profile",
        choices=["default", "strict", "loose"],
        help="Tolerance profile (default: $GKK_TAU_TOLERANCE_PROFILE or 'default')",
    )
    common.add_argument("--verbose", action="store_true", help="Log progress at INFO level")
    common.add_argument("--debug", action="store_true", help="Log details at DEBUG level")
    return common


def _add_matrix(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("matrix", help="Matrix file (JSON or whitespace text)")
    parser.add_argument(
        "--matrix-format", choices=["auto", "json", "text"], default="auto", help="Matrix file format (default: auto)"
    )


def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser with every sub-command.

    :return : ArgumentParser.
    :return: The CLI parser.
    """
    common = _common_parser()
    parser = _Parser(
        prog="gkk-tau",
        description="gkk-tau: certification and search for GKK and tau matrix classes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    p = subparsers.add_parser("classify", parents=[common], help="Run every certifier on a matrix")
    _add_matrix(p)
    p.set_defaults(func=cmd_classify)

    p = subparsers.add_parser("minors", parents=[common], help="Emit the principal-minor table")
    _add_matrix(p)
    p.add_argument("--exact", action="store_true", help="Rational elimination instead of LU")
    p.set_defaults(func=cmd_minors)

    p = subparsers.add_parser("check", parents=[common], help="Run one certifier")
    p.add_argument("name", choices=list(CHECK_NAMES), help="Certifier name")
    _add_matrix(p)
    p.set_defaults(func=cmd_check)

    p = subparsers.add_parser("dispersal", parents=[common], help="Dispersal sign condition or profile")
    _add_matrix(p)
    p.add_argument("--d", type=int, help="Largest dispersal (omit for the full profile)")
    p.add_argument("--strict", action="store_true", help="Require strictly positive products")
    p.set_defaults(func=cmd_dispersal)

    p = subparsers.add_parser("search", parents=[common], help="Extremal search inside a class")
    p.add_argument("--class", dest="matrix_class", required=True, help="Matrix class tag (e.g. tau, GKKtau)")
    p.add_argument("--objective", required=True, help="Objective tag (e.g. minVargaMargin)")
    p.add_argument("--n", type=int, required=True, help="Matrix order")
    p.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    p.add_argument("--iters", type=int, default=1000, help="Iterations per restart (default: 1000)")
    p.add_argument("--restarts", type=int, default=1, help="Independent restarts (default: 1)")
    p.add_argument("--step-init", type=float, default=0.2, help="Initial step size (default: 0.2)")
    p.add_argument("--step-decay", type=float, default=0.9995, help="Step decay per iteration (default: 0.9995)")
    p.add_argument("--step-min", type=float, default=1e-4, help="Step size floor (default: 1e-4)")
    p.add_argument("--start-budget", type=int, default=2000, help="Draws allowed for a start (default: 2000)")
    p.add_argument("--trace-every", type=int, default=50, help="Trace sampling period (default: 50)")
    p.add_argument("--require-stable", action="store_true", help="Walk only through stable members")
    p.set_defaults(func=cmd_search)

    p = subparsers.add_parser("approx-strict", parents=[common], help="Nearby strict GKK matrix")
    _add_matrix(p)
    p.add_argument("--eps", type=float, required=True, help="Radius in the max-entry metric")
    p.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    p.add_argument("--iters", type=int, default=2000, help="Random proposals (default: 2000)")
    p.add_argument("--require-tau", action="store_true", help="Also require tau membership")
    p.set_defaults(func=cmd_approx_strict)

    p = subparsers.add_parser("assign", parents=[common], help="Fit a matrix to prescribed minors")
    p.add_argument("--targets", required=True, help="Target minor table (JSON)")
    p.add_argument("--starts", type=int, default=16, help="Multi-start count (default: 16)")
    p.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    p.set_defaults(func=cmd_assign)

    p = subparsers.add_parser("interlace", parents=[common], help="Root interlacing of p and q")
    p.add_argument("--p", required=True, help="Polynomial file of degree n")
    p.add_argument("--q", required=True, help="Polynomial file of degree n-1")
    p.add_argument("--method", choices=list(INTERLACE_METHODS), default="roots-direct", help="Decision method")
    p.set_defaults(func=cmd_interlace)

    p = subparsers.add_parser("survey", parents=[common], help="Per-order frontier survey of a class")
    p.add_argument("--class", dest="matrix_class", required=True, help="Matrix class tag")
    p.add_argument("--orders", type=int, nargs="+", required=True, help="Orders to survey")
    p.add_argument("--samples", type=int, default=100, help="Members per order (default: 100)")
    p.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    p.add_argument("--budget", type=int, default=2000, help="Draws per member (default: 2000)")
    p.set_defaults(func=cmd_survey)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.debug else (logging.INFO if args.verbose else logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for CLI.

    :param argv: Arguments (defaults to sys.argv[1:]).
    :return : Exit code.
    :return: Exit code per the table in the module docstring.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT

    if not args.command:
        parser.print_help()
        return EXIT_INPUT

    _configure_logging(args)
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except DegeneracyError as e:
        logger.error(f"Degenerate input: {e}")
        return EXIT_UNDEFINED
    except CapError as e:
        logger.error(f"Cap exceeded: {e}")
        return EXIT_CAP
    except GkkTauError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
