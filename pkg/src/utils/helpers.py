"""
Common helper utilities for FolnerLab.
"""

import hashlib
import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from ..errors import ConfigError

logger = logging.getLogger(__name__)


def parse_fraction(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse an exact rational written "p/q" or as an integer.

    Raises:
        ConfigError: If the text is not an exact rational; decimals are
            refused so that no floating point enters certification
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    value = str(text).strip()
    if "." in value or "e" in value.lower():
        raise ConfigError(f"'{value}' is not an exact fraction (write p/q)")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"'{value}' is not a fraction p/q: {e}") from e


def format_fraction(value: Fraction) -> str:
    """Always "p/q", also for integers ("0/1")."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def canonical_json(data: Any) -> str:
    """Sorted-key compact JSON, the form that content hashes are taken of."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


def content_hash(data: Any) -> str:
    """MD5 of the canonical JSON of `data`."""
    return hashlib.md5(canonical_json(data).encode("utf-8")).hexdigest()


def atomic_write_text(path: Path, text: str) -> Path:
    """
    Write a file through a temporary sibling and os.replace.

    Readers never observe a partially written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug(f"Wrote {path}")
    return path


def get_file_size_mb(file_path: Path) -> float:
    """
    Get file size in MB.

    Args:
        file_path: Path to file

    Returns:
        File size in MB
    """
    file_path = Path(file_path)
    if not file_path.exists():
        return 0.0

    return file_path.stat().st_size / (1024 * 1024)
