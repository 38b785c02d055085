from __future__ import annotations

from typing import Optional


class Gamma2Error(ValueError):
    """Base class for invalid input to the toolkit."""


class DimensionError(Gamma2Error):
    pass


class SidednessError(Gamma2Error):
    """A two-sided curve was required but the support has odd size."""


class SlideConfigurationError(Gamma2Error):
    pass


class LetterConstraintError(Gamma2Error):
    pass


class GenusError(Gamma2Error):
    pass


class NotLevel2Error(Gamma2Error):
    pass


class NotUnimodularError(Gamma2Error):
    pass


class WordSyntaxError(Gamma2Error):
    def __init__(self, message: str, position: int, text: Optional[str] = None) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class DecompositionError(RuntimeError):
    """Raised when a decomposition cannot be produced or fails re-verification."""
