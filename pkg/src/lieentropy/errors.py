"""Exception taxonomy shared by the exact pipeline and the CLI.

Two failure families matter to callers: bad input (rejected data, violated
preconditions) and pipeline aborts (the input parsed but fell outside the
supported class, or an internal invariant check tripped).  The CLI maps the
first family to exit code 1 and the second to exit code 2.
"""


class InputError(ValueError):
    """Malformed input document (syntax, field, or value errors)."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    """Structurally well-formed input that violates a stated invariant."""


class DimensionError(ValueError):
    """Mismatched or non-square dimensions."""


class DomainError(ValueError):
    """Operation applied outside its mathematical domain."""


class ParameterError(ValueError):
    """Numerical-estimation parameters outside their stated ranges."""


class PipelineError(RuntimeError):
    """Analysis abort: the presentation is outside the supported class."""

    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(f"stage '{stage}': {message}")


class InvariantViolationError(PipelineError):
    """A post-verification that should hold on valid inputs failed."""


class TheoremViolationError(InvariantViolationError):
    """A mathematically guaranteed outcome failed to materialize."""
