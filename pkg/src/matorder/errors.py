"""Exception hierarchy shared by all matorder modules."""


class MatOrderError(Exception):
    """Base class for all library errors."""


class MalformedInputError(MatOrderError, ValueError):
    """Input violates a structural invariant (shape, hermiticity, finiteness)."""


class DomainViolationError(MatOrderError, ValueError):
    """Operand lies outside the domain of the requested map.

    Covers membership failures (shear domain, zero component, effect
    algebra, block domain), pole proximity in functional calculus, and
    singular intermediates.
    """


class ModelMismatchError(DomainViolationError):
    """A black-box evaluator is not of the model form being fitted."""


class PathSearchError(MatOrderError, RuntimeError):
    """No admissible path subdivision found within the depth/node budget."""
