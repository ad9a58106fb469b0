"""
Engine Configuration

Holds the knobs shared by the CLI and the numeric checks: sample-point
count and seed, worker threads for chart-pair verification, the kernel
rank tolerance and the default output format.

Values come from the dataclass defaults, then the environment, then a
.env file at the repository root. CLI flags override all of them.
"""

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Optional

log = logging.getLogger(__name__)

ENV_PREFIX = "PCONTACT_"
ENV_FILE = Path(__file__).parent.parent / ".env"


@dataclass(frozen=True)
class EngineConfig:
    """Configuration for verification runs"""
    points: int = 100           # seeded sample points per numeric check
    seed: int = 0
    workers: int = 1            # threads for glue_check chart pairs
    kernel_rtol: float = 1e-9   # relative singular-value threshold
    output_format: str = "json"  # "json" or "table"

    @classmethod
    def from_env(cls, env_file: Optional[Path] = None) -> "EngineConfig":
        """Load overrides from PCONTACT_* variables or the .env file"""
        values = _read_env_file(env_file or ENV_FILE)
        values.update({k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)})

        config = cls()
        overrides = {}
        for name, cast in (("points", int), ("seed", int), ("workers", int), ("kernel_rtol", float)):
            raw = values.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                overrides[name] = cast(raw)
            except ValueError:
                log.warning(f"ignoring {ENV_PREFIX}{name.upper()}={raw!r}: not a {cast.__name__}")
        raw_format = values.get(ENV_PREFIX + "FORMAT")
        if raw_format in ("json", "table"):
            overrides["output_format"] = raw_format
        if overrides:
            config = replace(config, **overrides)
        if config.workers < 1:
            config = replace(config, workers=1)
        return config

    def with_overrides(self, **changes) -> "EngineConfig":
        """Apply non-None overrides (CLI flags)"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _read_env_file(path: Path) -> Dict[str, str]:
    values: Dict[str, str] = {}
    if not path.exists():
        return values
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = line.split("=", 1)
            if key.strip().startswith(ENV_PREFIX):
                values[key.strip()] = value.strip()
    return values
