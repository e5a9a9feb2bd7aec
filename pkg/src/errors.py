from __future__ import annotations

from typing import Optional


class AtomcertError(Exception):
    """Base class for every error the CLI turns into an exit code."""
    exit_code = 1


class GaussCodeError(AtomcertError, ValueError):
    """Malformed `.gauss` text or a Gauss code that breaks its invariants."""

    def __init__(self,
                 message: str,
                 position: Optional[int] = None,
                 crossing_id: Optional[int] = None) -> None:
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position
        self.crossing_id = crossing_id


class ConfigError(AtomcertError, ValueError):
    """Invalid command-line or programmatic configuration."""


class PreconditionError(AtomcertError, ValueError):
    """Input is valid but outside the domain of the requested operation."""


class GuardExceeded(AtomcertError, RuntimeError):
    """Refusal to start an exponential computation above the configured size."""
    exit_code = 2

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(
            f"{what}: {size} crossings exceeds the guard of {limit} (use --force to override)"
        )
        self.what = what
        self.size = size
        self.limit = limit


class InvariantViolation(AtomcertError, RuntimeError):
    """An internal consistency check failed; this indicates a bug."""
    exit_code = 3
