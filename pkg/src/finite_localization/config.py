import logging
import os
from dataclasses import dataclass, replace
from typing import Any, NamedTuple, Optional

from .errors import BudgetExceededError, ConfigError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "structured")


class Budget(NamedTuple):
    """Size limits enforced when categories are materialized"""

    max_objects: int = 64
    max_morphisms: int = 20000
    max_composable_pairs: int = 4_000_000

    def check(self, objects: int, morphisms: int, composable_pairs: Optional[int] = None) -> None:
        if objects > self.max_objects:
            raise BudgetExceededError("objects", objects, self.max_objects)
        if morphisms > self.max_morphisms:
            raise BudgetExceededError("morphisms", morphisms, self.max_morphisms)
        if composable_pairs is not None and composable_pairs > self.max_composable_pairs:
            raise BudgetExceededError("composable pairs", composable_pairs, self.max_composable_pairs)


DEFAULT_BUDGET = Budget()


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class EngineConfig:
    """Run options shared by the CLI, the task runner and the suite.

    The environment only supplies budget defaults; explicit flags win.
    """

    max_objects: int = DEFAULT_BUDGET.max_objects
    max_morphisms: int = DEFAULT_BUDGET.max_morphisms
    max_composable_pairs: int = DEFAULT_BUDGET.max_composable_pairs
    workers: int = 1
    output_format: str = "text"
    verbosity: int = 0
    seed: int = 0
    include_timing: bool = False

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(
                f"Unsupported output format: {self.output_format}. Supported formats: {', '.join(OUTPUT_FORMATS)}"
            )
        for name in ("max_objects", "max_morphisms", "max_composable_pairs", "workers"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_env(cls) -> "EngineConfig":
        """Build a config from FINLOC_* variables (call load_dotenv() first)"""
        values = {}
        max_objects = _env_int("FINLOC_MAX_OBJECTS")
        if max_objects is not None:
            values["max_objects"] = max_objects
        max_morphisms = _env_int("FINLOC_MAX_MORPHISMS")
        if max_morphisms is not None:
            values["max_morphisms"] = max_morphisms
        if values:
            logger.info(f"[config] budget overrides from environment: {values}")
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> "EngineConfig":
        """Return a copy with every non-None override applied"""
        applied = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **applied)

    @property
    def budget(self) -> Budget:
        return Budget(self.max_objects, self.max_morphisms, self.max_composable_pairs)
