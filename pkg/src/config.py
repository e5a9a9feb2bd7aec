from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from .errors import ConfigError


DEFAULT_BRACKET_GUARD = 28
DEFAULT_KHOVANOV_GUARD = 14
ORACLE_LIMIT = 12
DEFAULT_CHUNK = 1 << 14
CABLE_CROSSING_LIMIT = 10_000
THREADS_ENV = "ATOMCERT_THREADS"


def resolve_threads(flag: Optional[int] = None) -> int:
    """Thread count: explicit flag, then ATOMCERT_THREADS, then available CPUs."""
    if flag is not None:
        return flag
    env = os.environ.get(THREADS_ENV, "").strip()
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {env!r}")
    return os.cpu_count() or 1


def parse_m_list(text: str) -> Tuple[int, ...]:
    """Parse `1,2,3` into cabling multiplicities."""
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"--m expects comma-separated integers, got {text!r}")
    if not values:
        raise ConfigError("--m needs at least one value")
    return values


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run needs besides the command name."""
    inputs: Tuple[Path, ...] = ()
    output_format: str = "text"
    bracket_guard: int = DEFAULT_BRACKET_GUARD
    khovanov_guard: int = DEFAULT_KHOVANOV_GUARD
    force: bool = False
    threads: int = field(default_factory=resolve_threads)
    epsilon: Fraction = Fraction(1)
    ms: Tuple[int, ...] = (1, 2)
    chunk: int = DEFAULT_CHUNK
    out: Optional[Path] = None
    log_level: str = "WARNING"

    def validate(self) -> "RunConfig":
        if self.output_format not in ("text", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.bracket_guard < 1 or self.khovanov_guard < 1:
            raise ConfigError("crossing guards must be positive")
        if self.threads < 1:
            raise ConfigError("thread count must be >= 1")
        if self.epsilon <= 0:
            raise ConfigError("epsilon must be positive")
        if any(m < 1 for m in self.ms):
            raise ConfigError("cabling multiplicities must be positive")
        if self.chunk < 1:
            raise ConfigError("chunk size must be positive")
        return self

    @property
    def bracket_limit(self) -> Optional[int]:
        return None if self.force else self.bracket_guard

    @property
    def khovanov_limit(self) -> Optional[int]:
        return None if self.force else self.khovanov_guard
