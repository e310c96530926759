"""Exception types raised across the package."""


class ForcedRankError(Exception):
    """Base class for all package errors."""


class InvalidScenarioError(ForcedRankError, ValueError):
    """A scenario parameter violates its constraints."""


class ConfigError(ForcedRankError):
    """A configuration document could not be parsed or validated."""


class OracleCapacityError(ForcedRankError):
    """The exhaustive oracle was asked for an instance it cannot enumerate."""


class ConsistencyError(ForcedRankError):
    """Internal results disagree with each other (e.g. mismatched id universes)."""
