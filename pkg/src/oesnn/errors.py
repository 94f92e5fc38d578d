"""Exception types shared across the package."""


class DimensionError(TypeError):
    """Arithmetic or comparison attempted across incompatible dimensions."""


class DomainError(ValueError):
    """An argument is outside the physical domain of a model."""


class InfeasibleError(DomainError):
    """The requested operating point cannot be realized (e.g. 100% detection)."""


class ConfigError(ValueError):
    """A scenario document violates the config schema.

    Collects every problem found so a bad config is reported in one pass.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid scenario config:\n" + "\n".join(f"  - {p}" for p in self.problems))


class SimulationError(RuntimeError):
    """Fatal condition inside a simulation run (overflow, non-finite state)."""

    def __init__(self, message, trace_tail=()):
        self.trace_tail = list(trace_tail)
        if self.trace_tail:
            tail = "\n".join(f"    {e}" for e in self.trace_tail)
            message = f"{message}\n  last events:\n{tail}"
        super().__init__(message)
