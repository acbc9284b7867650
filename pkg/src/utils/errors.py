"""Exception hierarchy for the GBF-PUM toolkit"""
from typing import Optional


class GbfPumError(Exception):
    """Base class for all toolkit errors"""

    exit_code: int = 1


class ValidationError(GbfPumError, ValueError):
    """Invalid input: malformed graph, signal, partition or parameters"""

    exit_code = 2


class DisconnectedGraphError(ValidationError):
    """A connected graph was required"""


class UnsplittableCommunityError(ValidationError):
    """A community holds fewer than two sample vertices"""


class NumericalError(GbfPumError, RuntimeError):
    """Numerical failure: non-convergence, loss of definiteness, undefined metric"""

    exit_code = 3

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual


class NoSamplesError(NumericalError):
    """A local fit was requested on a community without sample vertices"""


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code"""
    if isinstance(error, GbfPumError):
        return error.exit_code
    if isinstance(error, (OSError, ValueError)):
        return ValidationError.exit_code
    return 1
