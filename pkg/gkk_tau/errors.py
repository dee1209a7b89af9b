"""
Exception hierarchy for gkk_tau.

Input problems, resource caps and numerical trouble are kept apart so the CLI
can map each family to its own exit code.

:return : Exception classes.
:return: Errors raised by every gkk_tau module.
"""

from typing import Optional


class GkkTauError(Exception):
    """
    Base class of every error raised by gkk_tau.

    :return : GkkTauError instance.
    :return: Root of the hierarchy.
    """


class InputError(GkkTauError, ValueError):
    """Malformed or inconsistent user input."""


class MatrixParseError(InputError):
    """
    A matrix, polynomial or table file could not be parsed.

    :param message: What went wrong.
    :param line: 1-based line of the offending token, if known.
    :param position: 1-based token position within the file, if known.
    :return : MatrixParseError instance.
    :return: Parse error with location.
    """

    def __init__(
        self, message: str, line: Optional[int] = None, position: Optional[int] = None
    ) -> None:
        self.line = line
        self.position = position
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"token {position}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class DimensionError(InputError):
    """Matrix is not square, has the wrong number of values, or is empty."""


class SizeMismatchError(InputError):
    """Index sets of different sizes where equal sizes are required."""


class DegreeMismatchError(InputError):
    """Polynomial degrees do not satisfy deg q = deg p - 1."""


class OrderMismatchError(InputError):
    """Matrix and target table have different orders."""


class ConfigError(InputError):
    """Invalid tolerance profile or search/fit parameters."""


class CapError(GkkTauError):
    """A size or budget cap was hit."""


class OrderTooLargeError(CapError):
    """Matrix order exceeds the cap of the requested operation."""


class InfeasibleEnumerationError(CapError):
    """Estimated number of index-set pairs exceeds the enumeration guard."""


class BudgetExhaustedError(CapError):
    """Rejection sampling did not find a class member within its budget."""


class NumericalError(GkkTauError, ArithmeticError):
    """A numerical routine failed or hit a degenerate configuration."""


class ConvergenceError(NumericalError):
    """Eigenvalue iteration did not settle."""


class DegeneracyError(NumericalError):
    """Input sits on a boundary the method cannot adjudicate."""


class InvariantViolation(GkkTauError, AssertionError):
    """A mathematical invariant checked during a run was violated."""
