"""Exception types shared across the package.

Two families matter to callers: input problems (bad edge lists, nonpositive
weights, disconnected graphs) and numerical problems (divergent parameters,
ill-conditioned solves, iterations that fail to converge). The CLI maps the
first family to exit code 2 and the second to exit code 3.
"""


class GraphInputError(ValueError):
    """Invalid graph data: parse errors, bad weights, missing vertices."""


class EdgeListParseError(GraphInputError):
    """An edge-list file or string could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None) -> None:
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DisconnectedGraphError(GraphInputError):
    """A metric operation was attempted on a disconnected graph."""


class NumericalError(RuntimeError):
    """A computation failed for numerical reasons."""


class DivergenceError(NumericalError):
    """A series parameter is at or beyond its radius of convergence."""


class IllConditionedError(NumericalError):
    """A linear solve was rejected by the condition-number guard."""


class ConvergenceError(NumericalError):
    """An iterative method exhausted its budget without converging."""


class EnumerationBudgetError(RuntimeError):
    """A brute-force enumeration would exceed its walk-count cap."""
