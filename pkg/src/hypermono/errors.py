"""Exception types shared across the package."""


class HypermonoError(Exception):
    """Base class for errors raised by this package."""


class DomainError(HypermonoError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoSolutionError(DomainError):
    """An equation has no solution for the given data."""


class PreconditionError(DomainError):
    """An admissibility condition of a check is violated."""


class DegenerateIntervalError(HypermonoError, ValueError):
    """A normalising volume vanishes on the sampled interval."""


class SingularityError(HypermonoError, RuntimeError):
    """A numerical integration could not get past a singular point."""


class FitError(HypermonoError, ValueError):
    """A least-squares fit is too poorly conditioned to be trusted."""
