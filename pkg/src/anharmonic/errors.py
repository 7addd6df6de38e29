"""Shared exception types."""

from __future__ import annotations

__all__ = ["AccuracyError", "ResourceLimitError"]


class AccuracyError(RuntimeError):
    """A numerical routine could not meet its accuracy target."""


class ResourceLimitError(RuntimeError):
    """An exact computation exceeded its configured size budget."""
