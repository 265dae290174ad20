"""
Result export for FolnerLab.

Writes profile CSVs with their JSON companions. The CSV layout is versioned by a
header comment line and only ever extended under a new version.
"""

import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

import pandas as pd

from ..amen.profile import PROFILE_COLUMNS, UniformityProfile
from ..utils.helpers import atomic_write_text

logger = logging.getLogger(__name__)

PROFILE_CSV_HEADER = "# folnerlab-profile-csv v1"
CLASS_TABLE_COLUMNS = ["representative", "size", "centralizer_order"]


def to_json_text(data: Any) -> str:
    """Sorted keys, indent 2, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, default=str) + "\n"


def write_json(path: Path, data: Any) -> Path:
    return atomic_write_text(path, to_json_text(data))


def profile_csv_text(profile: UniformityProfile) -> str:
    """Versioned CSV of the profile rows; identical profiles give identical bytes."""
    buffer = io.StringIO()
    buffer.write(PROFILE_CSV_HEADER + "\n")
    profile.frame().to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def read_profile_csv(path: Path) -> pd.DataFrame:
    """
    Load a profile CSV written by this module.

    Raises:
        ValueError: If the version header is missing or different
    """
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        if header != PROFILE_CSV_HEADER:
            raise ValueError(f"{path} is not a '{PROFILE_CSV_HEADER}' file (header: '{header}')")
        frame = pd.read_csv(f, dtype={"S": str, "level": str})
    return frame[PROFILE_COLUMNS]


def class_table(classes: List[Dict[str, Any]]) -> pd.DataFrame:
    """Conjugacy class records as a table, one row per class."""
    return pd.DataFrame(
        [{column: c.get(column) for column in CLASS_TABLE_COLUMNS} for c in classes],
        columns=CLASS_TABLE_COLUMNS,
    )


class OutputExporter:
    """Writes command results into the output directory layout."""

    def __init__(self, path_manager):
        """
        Initialize output exporter.

        Args:
            path_manager: Path manager instance
        """
        self.paths = path_manager

    def write_profile(self, stem: str, profile: UniformityProfile, config: Dict[str, Any]) -> Tuple[Path, Path]:
        """
        Write a profile as CSV (for plotting) and JSON (with f_hat and config).

        Returns:
            (csv path, json path)
        """
        csv_path, json_path = self.paths.get_profile_files(stem)
        atomic_write_text(csv_path, profile_csv_text(profile))
        payload = profile.to_dict()
        payload["config"] = config
        write_json(json_path, payload)
        logger.info(f"Profile written: {csv_path.name}, {json_path.name} ({len(profile.rows)} rows)")
        return csv_path, json_path

    def generate_summary(self, profile: UniformityProfile) -> str:
        """Plain-text f_hat table."""
        lines = [f"Uniformity profile ({profile.mode}, seed {profile.seed})"]
        for entry in profile.f_hat():
            f_hat = "-" if entry["f_hat"] is None else entry["f_hat"]
            marker = "" if entry["exact"] else " (not all cells exact)"
            lines.append(f"  {entry['level']:<16} n={entry['n']:<3} f_hat={f_hat}{marker}")
        return "\n".join(lines)
