"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """Raised on dimension mismatches, negative inputs and similar misuse."""


class ResolventUndefinedError(ArithmeticError):
    """Raised when ``lambda - A`` cannot be inverted."""

    def __init__(self, lam, message=None):
        self.lam = lam
        super().__init__(message or f"resolvent undefined at lambda={lam!r}: matrix is singular")


class InvalidBoundError(ValueError):
    """Raised when a supplied (M, omega) pair fails the L1 growth check."""

    def __init__(self, t, slack, message=None):
        self.t = t
        self.slack = slack
        super().__init__(
            message or f"bound violated at t={t!r} by {slack:.3e}"
        )


class HypothesisNotSatisfiedError(ValueError):
    """Raised when a check is called with a constant that does not satisfy its hypothesis."""


class ConfigError(ValueError):
    """Raised for malformed or out-of-range scenario configurations."""


class UnknownScenarioError(ConfigError):
    """Raised when a configuration names a scenario that is not registered."""


class ScenarioNumericError(ArithmeticError):
    """A numeric failure while running a named scenario."""

    def __init__(self, scenario, cause):
        self.scenario = scenario
        self.cause = cause
        super().__init__(f"scenario {scenario!r}: {cause}")
