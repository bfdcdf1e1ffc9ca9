"""Exceptions raised by scaled_hypercomplex and their CLI exit codes."""

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SCALE = 3


class HypercomplexError(ValueError):
    """Base class of all errors raised by this package."""

    exit_code = EXIT_FAIL


class ScaleMismatchError(HypercomplexError):
    """Two operands live in rings with different scales."""

    exit_code = EXIT_SCALE

    def __init__(self, t1, t2):
        super().__init__(f"Scale mismatch: t={t1!r} and t={t2!r}.")
        self.scales = (t1, t2)


class ScaleConstraintError(HypercomplexError):
    """An operator was requested on a scale it is not defined for."""

    exit_code = EXIT_SCALE


class PatternViolationError(HypercomplexError):
    """A 2x2 matrix is not the realization of any hypercomplex number."""


class SingularError(HypercomplexError):
    """The element belongs to the semigroup part and has no inverse."""

    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class NullConeError(HypercomplexError):
    """Polar decomposition of an element with vanishing semi-norm."""


class NoBranchError(HypercomplexError):
    """No sign and angle reconstruct a hyperbolic number (t > 0, timelike)."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegreeTooLargeError(HypercomplexError):
    """Total degree exceeds the configured cap."""

    exit_code = EXIT_PARSE

    def __init__(self, degree, limit):
        super().__init__(f"Degree {degree} exceeds the maximum degree {limit}.")
        self.degree = degree
        self.limit = limit


class NotLeftRegularError(HypercomplexError):
    """A function handed to the expansion is not left regular."""

    def __init__(self, verdict):
        super().__init__(
            "Function is not left regular: residual {:.6g} at {}.".format(
                verdict.residual, list(verdict.worst_point)
            )
        )
        self.verdict = verdict

    @property
    def residual(self):
        return self.verdict.residual

    @property
    def witness(self):
        return self.verdict.worst_point


class EvaluationError(HypercomplexError):
    """A function could not be evaluated at the requested point."""


class ParseError(HypercomplexError):
    """Malformed user input (function spec, point, region, operand)."""

    exit_code = EXIT_PARSE


class ConfigError(HypercomplexError):
    """Invalid run configuration."""

    exit_code = EXIT_PARSE
