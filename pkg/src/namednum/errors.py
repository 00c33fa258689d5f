"""Shared error types for the engine."""


class EngineError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(EngineError):
    """Division by an exactly-zero value."""
