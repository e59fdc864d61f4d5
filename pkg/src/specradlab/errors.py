"""Shared exception types."""

from __future__ import annotations


class SpecRadLabError(Exception):
    """Base class for all package errors."""


class GroupMismatchError(SpecRadLabError):
    """Operands belong to different catalog groups."""


class UnknownGroupError(SpecRadLabError):
    """Group identifier is not in the catalog."""


class WordParseError(SpecRadLabError):
    """A generator word could not be parsed for the given group."""


class BudgetExceededError(SpecRadLabError):
    """A support-size / element-count / iteration budget was exceeded.

    ``partial`` optionally carries whatever was completed before the abort
    (e.g. a truncated product-set sequence), so callers that tolerate partial
    results can keep them.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NonHermitianError(SpecRadLabError):
    """An operation restricted to Hermitian elements got a non-Hermitian one."""


class NonAbelianError(SpecRadLabError):
    """The exact character-sum oracle was asked for a non-abelian group."""


class InexactInputError(SpecRadLabError):
    """An estimator requiring exact inputs received a truncated element."""


class ConfigError(SpecRadLabError):
    """Experiment configuration failed schema validation."""
