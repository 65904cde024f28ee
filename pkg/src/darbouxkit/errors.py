"""Exception hierarchy.

Mathematical negatives (a curve that is not integral, a certificate that does
not exist) are returned as ``None`` or ``False``; exceptions signal misuse,
violated hypotheses, or computations that could not reach a conclusion.
"""


class DarbouxError(Exception):
    """Base class for every error raised by this package."""


class InconclusiveError(DarbouxError):
    """The computation ran but could not decide (cutoffs, missing roots)."""


# field_core
class DivisionByZero(DarbouxError, ZeroDivisionError):
    pass


class MixedContexts(DarbouxError, TypeError):
    pass


# poly_core
class NotDivisible(DarbouxError):
    pass


class DegreeTooSmall(DarbouxError, ValueError):
    pass


class ArityMismatch(DarbouxError, ValueError):
    pass


# exact_linalg
class NoSolution(DarbouxError):
    pass


class DualPivotFailure(DarbouxError):
    pass


# darboux_core
class NotSquareFree(DarbouxError):
    pass


class ComponentAtInfinity(DarbouxError):
    pass


class NotFinite(InconclusiveError):
    """Hilbert function did not stabilize before the cutoff."""


class CommonComponent(DarbouxError):
    pass


class NotIntegralCurve(DarbouxError):
    pass


# local_sing
class NotFiniteColength(InconclusiveError):
    pass


class ComponentOnLine(DarbouxError):
    pass


# eta_cert
class HypothesisViolated(DarbouxError):
    pass


# focal_core
class PositiveDimensionalZeroSet(DarbouxError):
    pass


class NotEquilibrium(DarbouxError):
    pass


class NotCenterCandidate(DarbouxError):
    pass


class SquareRootUnavailable(InconclusiveError):
    pass


class CharacteristicTooSmall(DarbouxError):
    pass


class SolveFailure(DarbouxError):
    pass


# cli_io
class PolySyntaxError(DarbouxError, SyntaxError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        line = text.count("\n", 0, position) + 1
        column = position - (text.rfind("\n", 0, position) + 1) + 1
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class ConfigError(DarbouxError, ValueError):
    pass
