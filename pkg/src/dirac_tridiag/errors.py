"""Exception types raised by the package."""


class ParameterDomainError(ValueError):
    """A parameter or argument lies outside the domain where it is defined."""


class RequestError(ValueError):
    """An eigenvalue request cannot be satisfied by the given matrix."""


class DegenerateRecursionError(ArithmeticError):
    """A three-term recursion cannot be advanced because a coupling vanishes."""


class OracleError(RuntimeError):
    """An independent verification routine could not produce a trustworthy value."""


class SingularityError(ArithmeticError):
    """A function was evaluated at a point where one of its terms is singular."""


class ModelNotTridiagonalError(ValueError):
    """The chosen parameters do not produce a linear G(y)."""


class MisuseError(ValueError):
    """A closed-form result was requested outside the regime where it holds."""


class TruncationError(RuntimeError):
    """An expansion did not stabilise before the maximum basis size."""


class RootNotFoundError(RuntimeError):
    """No root of det J(epsilon) was found inside the scan window."""
