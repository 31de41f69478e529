"""
Configuration loading: built-in defaults, config.json, environment variables
and command-line overrides, in increasing order of precedence.
"""

import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from .errors import UsageError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.json"

# Library-level defaults; functions take explicit bounds that default to these.
DEFAULT_MAX_LEVEL = 20
DEFAULT_MAX_SEQUENCE_COUNT = 1 << 20
DEFAULT_MAX_DENOMINATOR = 2000

DEFAULT_SUITE_DEPTHS: Dict[str, int] = {
    "thm21": 12,
    "thm22": 14,
    "cor23": 12,
    "table1": 22,
    "thm31": 10,
    "best_approx": 10,
    "stern_brocot": 12,
    "simplest": 200,
    "figures": 3,
}

DEFAULT_TARGET_SECONDS: Dict[str, float] = {
    "thm21": 10.0,
    "thm22": 30.0,
    "cor23": 30.0,
    "table1": 1.0,
    "thm31": 30.0,
    "best_approx": 60.0,
    "stern_brocot": 30.0,
    "simplest": 60.0,
    "figures": 1.0,
}

ENV_PREFIX = "KINSHIP_"


@dataclass(frozen=True)
class Settings:
    """Resolved runtime configuration."""

    name: str = "Binary Tree Kinship Toolkit"
    version: str = "1.0.0"
    max_level: int = DEFAULT_MAX_LEVEL
    max_sequence_count: int = DEFAULT_MAX_SEQUENCE_COUNT
    max_denominator: int = DEFAULT_MAX_DENOMINATOR
    default_depths: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_SUITE_DEPTHS))
    pair_depth: int = 8
    random_pairs: int = 1000
    seed: int = 20140607
    all_pairs_denominator: int = 30
    jobs: int = 1
    log_level: str = "INFO"
    log_file: str = "logs/kinship.log"
    log_console: bool = True
    target_seconds: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TARGET_SECONDS))

    def depth_for(self, suite: str) -> int:
        return self.default_depths.get(suite, DEFAULT_SUITE_DEPTHS.get(suite, 0))


def _read_config_file(path: Path) -> Dict[str, Any]:
    """Load the JSON configuration file, or an empty mapping if it is absent."""
    if not path.exists():
        logger.warning(f"Config file not found: {path}; using built-in defaults")
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            config = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Error loading config {path}: {e}")
        raise UsageError(f"cannot read config file {path}: {e}") from e
    if not isinstance(config, dict):
        raise UsageError(f"config file {path} must contain a JSON object")
    return config


def _from_mapping(config: Mapping[str, Any]) -> Dict[str, Any]:
    """Flatten the sectioned config.json layout into Settings keywords."""
    values: Dict[str, Any] = {}
    system = config.get("system", {})
    bounds = config.get("bounds", {})
    oracle = config.get("oracle", {})
    log = config.get("logging", {})
    performance = config.get("performance", {})

    for key, section, target in (
        ("name", system, "name"),
        ("version", system, "version"),
        ("max_level", bounds, "max_level"),
        ("max_sequence_count", bounds, "max_sequence_count"),
        ("max_denominator", bounds, "max_denominator"),
        ("pair_depth", oracle, "pair_depth"),
        ("random_pairs", oracle, "random_pairs"),
        ("seed", oracle, "seed"),
        ("all_pairs_denominator", oracle, "all_pairs_denominator"),
        ("jobs", oracle, "jobs"),
        ("level", log, "log_level"),
        ("file", log, "log_file"),
        ("console", log, "log_console"),
    ):
        if key in section:
            values[target] = section[key]

    if "default_depths" in oracle:
        depths = dict(DEFAULT_SUITE_DEPTHS)
        depths.update({k: int(v) for k, v in oracle["default_depths"].items()})
        values["default_depths"] = depths
    if "target_seconds" in performance:
        targets = dict(DEFAULT_TARGET_SECONDS)
        targets.update({k: float(v) for k, v in performance["target_seconds"].items()})
        values["target_seconds"] = targets
    return values


def _from_environment(environ: Mapping[str, str]) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for suffix, target in (("MAX_LEVEL", "max_level"), ("SEED", "seed"), ("JOBS", "jobs")):
        raw = environ.get(ENV_PREFIX + suffix)
        if raw is None:
            continue
        try:
            values[target] = int(raw)
        except ValueError as e:
            raise UsageError(f"{ENV_PREFIX}{suffix} must be an integer, got {raw!r}") from e
    if ENV_PREFIX + "LOG_LEVEL" in environ:
        values["log_level"] = environ[ENV_PREFIX + "LOG_LEVEL"].upper()
    return values


def load_settings(
    path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    """
    Resolve the effective settings.

    Args:
        path: Config file path; falls back to KINSHIP_CONFIG, then config.json
            at the repository root
        overrides: Values from command-line flags (None entries are ignored)
        environ: Environment mapping, os.environ by default

    Returns:
        Frozen Settings instance
    """
    environ = os.environ if environ is None else environ
    config_path = Path(path or environ.get(ENV_PREFIX + "CONFIG") or DEFAULT_CONFIG_PATH)

    settings = replace(Settings(), **_from_mapping(_read_config_file(config_path)))
    settings = replace(settings, **_from_environment(environ))
    if overrides:
        settings = replace(settings, **{k: v for k, v in overrides.items() if v is not None})

    for name in ("max_sequence_count", "max_denominator", "pair_depth", "jobs"):
        if getattr(settings, name) < 1:
            raise UsageError(f"{name} must be positive")
    if settings.max_level < 0:
        raise UsageError("max_level must be non-negative")
    logger.debug(f"Settings resolved from {config_path}: {settings}")
    return settings
