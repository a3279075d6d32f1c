"""Shared exception types and resource-cap default."""

DEFAULT_MAX_COUNT = 10**6


class SymbolParseError(ValueError):
    """Malformed tree symbol. Carries the offset of the offending character."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CapExceeded(RuntimeError):
    """An enumeration or chain build went past its configured resource cap."""


class LabelMismatch(ValueError):
    """Two objects that must share a label set (or a level) do not."""


class UnhealthyTarget(ValueError):
    """Operation requires a healthy target tree."""


class NotActive(ValueError):
    """Operation requires an active morphism."""


class BranchingConditionViolation(ValueError):
    """Set-level map admits no lift because the branching condition fails."""
