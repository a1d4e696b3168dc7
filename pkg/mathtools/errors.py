"""
Error types shared by the numerical library and the scenario harness.
"""

from typing import Optional


class DomainError(ValueError):
    """Argument outside the documented domain of an operation (poles, t <= 0, wrong sign of Im lambda)."""


class IntegrationError(RuntimeError):
    """
    Quadrature failure.

    `tail` names the side of the half-line that failed to decay
    ("lower" or "upper"), or is None when the failure is interior.
    """

    def __init__(self, message: str, tail: Optional[str] = None):
        super().__init__(message)
        self.tail = tail

    def __str__(self) -> str:
        base = super().__str__()
        if self.tail:
            return f"{base} [{self.tail} tail]"
        return base


class UnknownIdError(LookupError):
    """Unknown kernel, measure, function, closed-form or scenario id."""


class UnsupportedError(NotImplementedError):
    """Input outside the supported radial family."""


class ConfigError(ValueError):
    """Invalid scenario configuration."""
