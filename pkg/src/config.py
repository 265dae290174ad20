"""
Configuration management for FolnerLab.

Supports a flat key = value configuration file and CLI argument overrides.
Environment variables supply directory and logging defaults.
"""

import configparser
import logging
import os
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from .errors import ConfigError, GroupSpecError
from .groups.spec import parse_family_spec
from .templates import get_template
from .utils.helpers import content_hash, format_fraction, parse_fraction

logger = logging.getLogger(__name__)

# =============================================================================
# Environment Variable Configuration
# =============================================================================

_SECTION = "RUN"


def get_out_dir() -> Path:
    """Get output directory path from environment or default."""
    return Path(os.environ.get('FOLNERLAB_OUT_DIR', './output'))


def get_log_level() -> str:
    """Get logging level from environment or default."""
    return os.environ.get('FOLNERLAB_LOG_LEVEL', 'INFO').upper()


def _parse_bool(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"'{text}' is not a boolean (true/false)")


def parse_exclusion(text: Optional[str]) -> Optional[bool]:
    """'auto' (or nothing) leaves the choice to the mode; otherwise a boolean."""
    if text is None or str(text).strip().lower() in ("", "auto"):
        return None
    return _parse_bool(text)


def parse_int(text: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(f"'{text}' is not an integer") from None


def parse_int_range(text: str) -> Tuple[int, int]:
    """'a..b' or a single 'a'."""
    value = str(text).strip()
    low, sep, high = value.partition("..")
    try:
        return (int(low), int(high)) if sep else (int(low), int(low))
    except ValueError:
        raise ConfigError(f"'{text}' is not a range a..b") from None


def parse_int_list(text: str) -> List[int]:
    return [parse_int(part) for part in str(text).split(",") if part.strip()]


def parse_fraction_list(text: str) -> List[Fraction]:
    return [parse_fraction(part) for part in str(text).split(",") if part.strip()]


@dataclass
class RunConfig:
    """Resolved configuration of one FolnerLab run."""

    # Groups
    groups: str = "sym:2..5"
    tower_levels: List[int] = field(default_factory=lambda: [1, 2, 4])

    # Budgets
    enum_budget: int = 10**6
    subset_budget: int = 2 * 10**6
    formula_budget: int = 10**6
    eval_budget: int = 10**8

    # Følner parameters
    epsilons: List[Fraction] = field(default_factory=lambda: [Fraction(1), Fraction(1, 2), Fraction(1, 3)])
    exclude_identity: Optional[bool] = None

    # Profiles
    seed: int = 0
    n_range: Tuple[int, int] = (1, 4)
    samples_per_n: int = 2

    # Free words
    max_word_length: int = 8

    # Output
    out_dir: Path = field(default_factory=get_out_dir)

    def __post_init__(self):
        """Validate configuration after initialization."""
        self.out_dir = Path(self.out_dir)
        self.epsilons = [parse_fraction(e) for e in self.epsilons]
        self.n_range = tuple(self.n_range)

        try:
            parse_family_spec(self.groups)
        except GroupSpecError as e:
            raise ConfigError(f"Invalid GROUPS: {e}") from e

        if not self.tower_levels:
            raise ConfigError("TOWER_LEVELS must name at least one degree")
        for lower, upper in zip(self.tower_levels, self.tower_levels[1:]):
            if lower >= upper or upper % lower:
                raise ConfigError(f"Invalid TOWER_LEVELS {self.tower_levels}: each degree must divide the next")

        for name in ("enum_budget", "subset_budget", "formula_budget", "eval_budget"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name.upper()} must be positive, got {getattr(self, name)}")

        if not self.epsilons or any(e <= 0 for e in self.epsilons):
            raise ConfigError(f"EPSILONS must be positive fractions, got {[format_fraction(e) for e in self.epsilons]}")

        if self.seed < 0:
            raise ConfigError(f"SEED must be a nonnegative integer, got {self.seed}")

        low, high = self.n_range
        if low < 1 or high < low:
            raise ConfigError(f"Invalid N_RANGE {low}..{high}")

        if self.samples_per_n < 1:
            raise ConfigError(f"SAMPLES_PER_N must be positive, got {self.samples_per_n}")

        if self.max_word_length < 1:
            raise ConfigError(f"MAX_WORD_LENGTH must be positive, got {self.max_word_length}")

    def to_dict(self) -> Dict[str, Any]:
        """Canonical JSON-ready form embedded in every output record."""
        return {
            "groups": self.groups,
            "tower_levels": list(self.tower_levels),
            "enum_budget": self.enum_budget,
            "subset_budget": self.subset_budget,
            "formula_budget": self.formula_budget,
            "eval_budget": self.eval_budget,
            "epsilons": [format_fraction(e) for e in self.epsilons],
            "exclude_identity": self.exclude_identity,
            "seed": self.seed,
            "n_range": list(self.n_range),
            "samples_per_n": self.samples_per_n,
            "max_word_length": self.max_word_length,
            "out_dir": str(self.out_dir),
        }

    def config_hash(self) -> str:
        """Hash of the settings that can change results (the output location cannot)."""
        settings = self.to_dict()
        del settings["out_dir"]
        return content_hash(settings)


# file key -> (RunConfig field, converter)
_KEYS: Dict[str, Tuple[str, Callable[[str], Any]]] = {
    "GROUPS": ("groups", str.strip),
    "TOWER_LEVELS": ("tower_levels", parse_int_list),
    "ENUM_BUDGET": ("enum_budget", parse_int),
    "SUBSET_BUDGET": ("subset_budget", parse_int),
    "FORMULA_BUDGET": ("formula_budget", parse_int),
    "EVAL_BUDGET": ("eval_budget", parse_int),
    "EPSILONS": ("epsilons", parse_fraction_list),
    "EXCLUDE_IDENTITY": ("exclude_identity", parse_exclusion),
    "SEED": ("seed", parse_int),
    "N_RANGE": ("n_range", parse_int_range),
    "SAMPLES_PER_N": ("samples_per_n", parse_int),
    "MAX_WORD_LENGTH": ("max_word_length", parse_int),
    "OUT_DIR": ("out_dir", lambda text: Path(text.strip())),
}


class ConfigManager:
    """Manages configuration loading from flat config files with CLI overrides."""

    def __init__(self, config_file: Optional[Path] = None, cli_overrides: Optional[Dict[str, Any]] = None):
        """
        Initialize configuration manager.

        Args:
            config_file: Path to a flat key = value configuration file
            cli_overrides: Dictionary of RunConfig field overrides

        Raises:
            ConfigError: If the configuration file does not exist
        """
        self.config_file = Path(config_file) if config_file else None
        self.cli_overrides = cli_overrides or {}

        if self.config_file and not self.config_file.exists():
            raise ConfigError(f"Configuration file not found: {config_file}")

    def load_config(self) -> RunConfig:
        """
        Load configuration from file and apply CLI overrides.

        Returns:
            RunConfig object

        Raises:
            ConfigError: If a key is unknown or a value is invalid
        """
        if self.config_file:
            logger.info(f"Loading configuration from {self.config_file}")
            config_dict = self._load_from_file()
        else:
            logger.debug("No configuration file provided, using defaults and CLI arguments")
            config_dict = {}

        overrides = {k: v for k, v in self.cli_overrides.items() if v is not None}
        if overrides:
            known = {f.name for f in fields(RunConfig)}
            unknown = sorted(set(overrides) - known)
            if unknown:
                raise ConfigError(f"Unknown configuration overrides: {', '.join(unknown)}")
            logger.debug(f"Applying {len(overrides)} CLI overrides")
            config_dict.update(overrides)

        return RunConfig(**config_dict)

    def _load_from_file(self) -> Dict[str, Any]:
        """Read the flat file; a [RUN] header is implied when absent."""
        text = self.config_file.read_text(encoding="utf-8")
        if not any(line.strip().startswith("[") for line in text.splitlines()):
            text = f"[{_SECTION}]\n{text}"

        parser = configparser.ConfigParser(
            delimiters="=",
            inline_comment_prefixes=("#",),
            interpolation=None,
        )
        parser.optionxform = str.upper
        try:
            parser.read_string(text, source=str(self.config_file))
        except configparser.Error as e:
            raise ConfigError(f"Cannot parse {self.config_file}: {e}") from e

        if _SECTION not in parser:
            raise ConfigError(f"{self.config_file} has no [{_SECTION}] section")

        config_dict = {}
        for key, raw in parser[_SECTION].items():
            if key not in _KEYS:
                raise ConfigError(f"Unknown configuration key '{key}' in {self.config_file}")
            name, convert = _KEYS[key]
            config_dict[name] = convert(raw)
        return config_dict

    @staticmethod
    def create_default_config(output_path: Path) -> None:
        """
        Create a default configuration file.

        Args:
            output_path: Path where to save the file
        """
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(get_template("folnerlab.ini"), encoding="utf-8")
        logger.info(f"Created default configuration file: {output_path}")
