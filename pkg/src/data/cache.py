"""
Result cache for FolnerLab.

Every command result is stored as one JSON record under <out>/records/,
keyed by a content hash of (command, inputs, config), so a repeated run
returns the stored record unchanged.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..utils.helpers import atomic_write_text, content_hash, get_file_size_mb

logger = logging.getLogger(__name__)

ARTIFACT_VERSION = "folnerlab-record v1"


def record_key(command: str, inputs: Dict[str, Any], config_hash: str) -> str:
    """
    Generate the cache key of a command run.

    Args:
        command: Subcommand name
        inputs: Canonical command inputs (strings, numbers, lists)
        config_hash: RunConfig.config_hash()

    Returns:
        MD5 hex digest
    """
    return content_hash({"command": command, "inputs": inputs, "config": config_hash})


def serialize_record(record: Dict[str, Any]) -> str:
    """Stored form of a record: sorted keys, indent 2, trailing newline."""
    return json.dumps(record, sort_keys=True, indent=2, default=str) + "\n"


class ResultCache:
    """Manages content-addressed result records."""

    def __init__(self, records_dir: Path):
        """
        Initialize result cache.

        Args:
            records_dir: Directory holding <key>.json records
        """
        self.records_dir = Path(records_dir)
        self.records_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, key: str) -> Path:
        return self.records_dir / f"{key}.json"

    def get(self, key: str) -> Optional[Dict[str, Any]]:
        """
        Get a cached record if available.

        Returns:
            The stored record, or None on a miss; an unreadable record is
            dropped with a warning and counts as a miss
        """
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Dropping unreadable cache record {path.name}: {e}")
            path.unlink(missing_ok=True)
            return None
        logger.info(f"Using cached record: {path.name}")
        return record

    def get_text(self, key: str) -> Optional[str]:
        """Stored record text, byte for byte."""
        path = self.path_for(key)
        return path.read_text(encoding="utf-8") if path.exists() else None

    def put(
        self,
        command: str,
        inputs: Dict[str, Any],
        config: Dict[str, Any],
        config_hash: str,
        outputs: Dict[str, Any],
        started_at: Optional[datetime] = None,
    ) -> Dict[str, Any]:
        """
        Store a command result.

        Args:
            command: Subcommand name
            inputs: Canonical command inputs
            config: Resolved RunConfig.to_dict()
            config_hash: RunConfig.config_hash()
            outputs: Command result payload
            started_at: Start of the run (defaults to now)

        Returns:
            The stored record
        """
        key = record_key(command, inputs, config_hash)
        finished_at = datetime.now()
        record = {
            "key": key,
            "command": command,
            "config_hash": config_hash,
            "config": config,
            "inputs": inputs,
            "outputs": outputs,
            "started_at": (started_at or finished_at).isoformat(),
            "finished_at": finished_at.isoformat(),
            "artifact_version": ARTIFACT_VERSION,
        }
        atomic_write_text(self.path_for(key), serialize_record(record))
        logger.info(f"Cached record: {key}.json")
        return record

    def list_records(self) -> List[Dict[str, Any]]:
        """
        List all cached records with their metadata.

        Returns:
            key, command, finished_at and size per record, sorted by key
        """
        listed = []
        for path in sorted(self.records_dir.glob("*.json")):
            try:
                record = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"Skipping unreadable cache record {path.name}: {e}")
                continue
            listed.append({
                "key": path.stem,
                "command": record.get("command"),
                "finished_at": record.get("finished_at"),
                "size_mb": round(get_file_size_mb(path), 6),
            })
        return listed

    def size(self) -> Dict[str, float]:
        """
        Get total cache size.

        Returns:
            Dictionary with record count and size in MB
        """
        paths = list(self.records_dir.glob("*.json"))
        return {
            "records": len(paths),
            "total_mb": round(sum(get_file_size_mb(p) for p in paths), 6),
        }

    def clear(self) -> int:
        """
        Clear cache.

        Returns:
            Number of records removed
        """
        removed = 0
        for path in self.records_dir.glob("*.json"):
            path.unlink()
            removed += 1
        logger.info(f"Cleared {removed} cached records")
        return removed
