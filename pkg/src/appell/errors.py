"""Exception hierarchy shared by every evaluator."""


class AppellError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(AppellError, ZeroDivisionError):
    """A gamma function or Pochhammer denominator hits a pole."""


class DomainError(AppellError, ValueError):
    """The argument point lies outside the region where an evaluator is valid."""


class BranchError(DomainError):
    """A real power of a nonpositive base with non-integer exponent was requested."""


class SingularPoint(DomainError):
    """An operator identity is singular at the requested point (division by x or y)."""


class ParameterError(AppellError, ValueError):
    """Parameters violate the ordering or positivity an integral representation needs."""


class ConstraintError(ParameterError):
    """A reduction or summation formula was called off its constraint surface."""


class UnsupportedShift(AppellError, ValueError):
    """No recursion of the requested (family, parameter, direction) type exists."""


class DimensionError(AppellError, ValueError):
    """Too many variables for the multi-index engine."""


class QuadratureFailure(AppellError, RuntimeError):
    """Adaptive quadrature could not meet its tolerance within the panel budget."""


class BudgetExceeded(AppellError, RuntimeError):
    """Series summation ran out of its index budget.

    Evaluators normally return a result with ``converged=False`` instead; this
    is raised only when ``EvaluationOptions.raise_on_budget`` is set.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
