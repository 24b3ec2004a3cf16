"""Exception types shared across the toolkit."""


class HarvestlabError(Exception):
    """Base class for all toolkit-specific errors."""


class NoEquilibrium(HarvestlabError):
    """The constant-coefficient model has no nontrivial equilibrium (effort >= growth rate)."""


class DepletionError(HarvestlabError):
    """Per-capita quantities are undefined because the stock is at or below the depletion floor."""


class StepUnderflow(HarvestlabError):
    """The integrator could not meet the error tolerance within the allowed step halvings."""


class HypothesisViolated(HarvestlabError):
    """A positivity hypothesis required by the periodic-solution machinery fails somewhere."""


class NoSignChange(HarvestlabError):
    """The period-map residual does not change sign over the bracket; no fixed point certified."""


class ConfigError(HarvestlabError):
    """A scenario document is malformed; the message carries the offending key path."""


class MismatchError(HarvestlabError):
    """Strategy comparison requires scenarios sharing growth parameters and forcing."""
