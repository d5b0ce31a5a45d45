"""Error types shared across the package."""

from __future__ import annotations


class GraphFormatError(ValueError):
    """Raised when an input stream is not valid edge-list or graph6 data."""


class CapExceeded(RuntimeError):
    """Raised when an exact procedure is asked to exceed its size cap.

    The caps exist because every decision here is by exhaustive search;
    they are named constants on the modules that enforce them.
    """


class BoundViolation(AssertionError):
    """A proven density bound failed on a certified-critical graph.

    This never means new mathematics; it means a bug somewhere in the
    pipeline, so the full diagnostic payload rides along.
    """

    def __init__(self, message: str, details: dict):
        super().__init__(f"{message}; diagnostic dump: {details}")
        self.details = details
