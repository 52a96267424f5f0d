"""Exception hierarchy.

Everything raised deliberately by the package derives from
:class:`FusionFrameError`, so callers (and the CLI) can catch one type.
Precondition failures of the constructions derive from
:class:`PreconditionError`; the CLI maps those to exit code 2.
"""


class FusionFrameError(Exception):
    """Base class for all package errors."""


# numerics

class NotSymmetricError(FusionFrameError, ValueError):
    pass


class NoConvergenceError(FusionFrameError, RuntimeError):
    pass


class NotOrthonormalError(FusionFrameError, ValueError):
    pass


class ShapeMismatchError(FusionFrameError, ValueError):
    pass


class SingularOperatorError(FusionFrameError, ValueError):
    """The operator is not positive definite, so the family is not a fusion frame."""


# model

class AmbientMismatchError(FusionFrameError, ValueError):
    pass


class DimensionMismatchError(FusionFrameError, ValueError):
    pass


# constructions

class PreconditionError(FusionFrameError, ValueError):
    """A theorem hypothesis required by a construction does not hold."""


class InfeasibleError(PreconditionError):
    """The requested spectrum fails the feasibility conditions.

    ``violations`` holds the failed conditions, each with a ``code`` and a
    human readable message.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(str(v) for v in self.violations) or "infeasible"
        super().__init__(msg)


class InternalOverrunError(FusionFrameError, RuntimeError):
    """Spectral tetris ran past the end of a column or the matrix.

    Unreachable for feasible input; seeing it means a bug or an
    infeasible spectrum that slipped through.
    """


class OrthogonalityViolationError(FusionFrameError, RuntimeError):
    pass


class NontrivialIntersectionError(PreconditionError):
    pass


class FullSubspaceError(PreconditionError):
    pass


class NotParsevalError(PreconditionError):
    pass


class UnitWeightError(PreconditionError):
    pass


class NoAdmissibleConstantError(PreconditionError):
    pass


# io

class ParseError(FusionFrameError, ValueError):
    pass


class InvariantViolationError(FusionFrameError, ValueError):
    pass
