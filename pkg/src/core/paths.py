"""
Path management for FolnerLab.

Manages the record and profile directories under one output
directory.
"""

from pathlib import Path
from typing import Optional
import logging

from ..config import get_out_dir

logger = logging.getLogger(__name__)


class PathManager:
    """Manages all directory paths for FolnerLab runs."""

    def __init__(self, out_dir: Optional[Path] = None):
        """
        Initialize path manager.

        Args:
            out_dir: Output directory (defaults to $FOLNERLAB_OUT_DIR or ./output)
        """
        self.output_dir = Path(out_dir) if out_dir is not None else get_out_dir()

        self.records_dir = self.output_dir / "records"
        self.profiles_dir = self.output_dir / "profiles"
        logger.debug(f"Output directory: {self.output_dir}")

    def get_records_dir(self, create: bool = True) -> Path:
        """Get cache record directory."""
        if create:
            self.records_dir.mkdir(parents=True, exist_ok=True)
        return self.records_dir

    def get_profiles_dir(self, create: bool = True) -> Path:
        """Get profile CSV/JSON directory."""
        if create:
            self.profiles_dir.mkdir(parents=True, exist_ok=True)
        return self.profiles_dir

    def get_profile_files(self, stem: str) -> tuple:
        """CSV and JSON paths of a profile."""
        profiles = self.get_profiles_dir()
        return profiles / f"{stem}.csv", profiles / f"{stem}.json"

    def __str__(self) -> str:
        """String representation of paths."""
        return (
            f"PathManager(\n"
            f"  output_dir={self.output_dir}\n"
            f"  records_dir={self.records_dir}\n"
            f"  profiles_dir={self.profiles_dir}\n"
            f")"
        )
