"""
Report Storage — JSON persistence for analysis reports
Reports are written deterministically (sorted keys, no timestamps) so that
rerunning an analysis reproduces the same bytes.
"""
import os
from typing import Dict, List

from core.config import REPORTS_DIR
from core.errors import InputError
from tools.file_formats import dumps, read_json


class ReportStorage:
    """
    Persistent storage for shiftlab reports:
    - Classification reports
    - Power decomposition reports
    - Moment-matrix and recovery reports
    """

    def __init__(self, storage_dir: str = None):
        self.storage_dir = storage_dir or REPORTS_DIR
        os.makedirs(self.storage_dir, exist_ok=True)

    def _path(self, name: str) -> str:
        if not name or os.sep in name or name.startswith("."):
            raise InputError(f"invalid report name {name!r}")
        filename = name if name.endswith(".json") else f"{name}.json"
        return os.path.join(self.storage_dir, filename)

    # ── Save / load ───────────────────────────────────────────────
    def save(self, name: str, report) -> str:
        path = self._path(name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps(report))
        return path

    def load(self, name: str) -> Dict:
        path = self._path(name)
        if not os.path.exists(path):
            return {}
        return read_json(path)

    # ── Listing ───────────────────────────────────────────────────
    def list_reports(self) -> List[str]:
        if not os.path.exists(self.storage_dir):
            return []
        return sorted(f[:-5] for f in os.listdir(self.storage_dir) if f.endswith(".json"))

    def delete(self, name: str) -> bool:
        path = self._path(name)
        if os.path.exists(path):
            os.remove(path)
            return True
        return False
