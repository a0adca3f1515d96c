"""Exception types shared across the package."""

from __future__ import annotations


class SingularityError(ValueError):
    """Evaluation requested exactly on a non-integrable singularity."""


class DegenerateKernelError(ValueError):
    """A convolution kernel row has a vanishing or negative leading weight."""


class PrecisionError(ArithmeticError):
    """A series or quadrature failed to reach the requested accuracy.

    Carries the magnitude of the last computed term so callers can decide
    whether the partial result is still usable.
    """

    def __init__(self, message: str, last_term: float | None = None):
        super().__init__(message)
        self.last_term = last_term


class StepSizeError(RuntimeError):
    """An implicit step is unsolvable for the given step size.

    ``level`` is the time level at which the solvability condition failed.
    """

    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level
