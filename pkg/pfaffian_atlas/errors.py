"""
Exception hierarchy for the Pfaffian Atlas library.
"""

from typing import Optional


class AtlasError(Exception):
    """Base class for every error raised by pfaffian_atlas."""


class InvalidInputError(AtlasError):
    """Malformed index tuple, tableau, array, polynomial or spec."""


class NotGPfaffianError(AtlasError):
    """Raised by operations that are only defined for G-Pfaffian cogenerators."""


class PreconditionError(AtlasError):
    """A construction was asked for outside the range where it is defined."""


class CapExceededError(AtlasError):
    """An enumeration would produce more objects than the configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeds the configured cap of {cap}")
        self.what = what
        self.cap = cap


class BudgetExceededError(AtlasError):
    """
    Buchberger ran out of its pair budget.

    The partial computation is attached so the caller can resume it with a
    larger budget.
    """

    def __init__(self, pairs_processed: int, partial: Optional[object] = None):
        super().__init__(
            f"Buchberger budget exceeded after {pairs_processed} pairs; "
            "resume with a larger max_pairs"
        )
        self.pairs_processed = pairs_processed
        self.partial = partial
