"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the domain an operation accepts."""


class TopologyError(ParameterError):
    """A topology failed validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class FewerThanTwoFeasible(Exception):
    """Parent selection needs at least two feasible individuals."""


class BudgetExceeded(Exception):
    """The exhaustive search space is larger than the allowed budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"search needs {required} evaluations, budget is {budget}")


class ProblemFormatError(ValueError):
    """Malformed problem file; carries the 1-based offending line."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
