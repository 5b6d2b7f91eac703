"""Environment-driven settings.

Every setting has a default and can be overridden through an environment
variable. Command-line flags, when given, take precedence over both.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Mapping

from levelcross.exceptions import InvalidInput

WORKERS_VARIABLE = "LEVELCROSS_WORKERS"
BUDGET_VARIABLE = "LEVELCROSS_ENUMERATION_BUDGET"
LOG_LEVEL_VARIABLE = "LEVELCROSS_LOG_LEVEL"

_LOG_LEVELS = frozenset({"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"})


@dataclass(frozen=True)
class Settings:
    """Runtime settings of the package.

    Attributes:
        workers: number of worker processes used by exhaustive enumerations.
            ``1`` runs everything in the calling process.
        enumeration_budget: maximum projected number of labelings an exhaustive
            enumeration is allowed to visit.
        log_level: name of the logging level used by the command-line interface.
    """

    workers: int = 1
    enumeration_budget: int = 2_000_000
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise InvalidInput(f"Invalid worker count {self.workers}, expected at least 1.")
        if self.enumeration_budget < 1:
            raise InvalidInput(
                f"Invalid enumeration budget {self.enumeration_budget}, expected at least 1."
            )
        if self.log_level not in _LOG_LEVELS:
            raise InvalidInput(
                f"Invalid log level {self.log_level!r}, expected one of {sorted(_LOG_LEVELS)}."
            )

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Settings:
        env = os.environ if environ is None else environ
        defaults = cls()
        return cls(
            workers=_read_int(env, WORKERS_VARIABLE, defaults.workers),
            enumeration_budget=_read_int(env, BUDGET_VARIABLE, defaults.enumeration_budget),
            log_level=env.get(LOG_LEVEL_VARIABLE, defaults.log_level).upper(),
        )

    def with_overrides(
        self,
        workers: int | None = None,
        enumeration_budget: int | None = None,
        log_level: str | None = None,
    ) -> Settings:
        """Return a copy where every non-``None`` argument replaces the stored value."""
        changes: dict[str, int | str] = {}
        if workers is not None:
            changes["workers"] = workers
        if enumeration_budget is not None:
            changes["enumeration_budget"] = enumeration_budget
        if log_level is not None:
            changes["log_level"] = log_level.upper()
        return replace(self, **changes)  # type: ignore[arg-type]


def _read_int(env: Mapping[str, str], name: str, default: int) -> int:
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise InvalidInput(f"Invalid value {raw!r} for {name}, expected an integer.") from e
