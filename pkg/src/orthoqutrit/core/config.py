from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

_TRUTHY = {"1", "true", "yes"}


@dataclass
class Settings:
    log_level: str
    log_dir: str
    threads: int
    clear_logs_on_launch: bool

    @staticmethod
    def from_env() -> "Settings":
        default_log_dir = str(Path(os.path.expanduser("~")) / ".orthoqutrit" / ".logs")
        try:
            threads = int(os.getenv("ORTHOQUTRIT_THREADS", "1"))
        except ValueError:
            threads = 1
        return Settings(
            log_level=os.getenv("ORTHOQUTRIT_LOG_LEVEL", "warning"),
            log_dir=os.getenv("ORTHOQUTRIT_LOG_DIR") or default_log_dir,
            threads=max(1, threads),
            clear_logs_on_launch=os.getenv("ORTHOQUTRIT_CLEAR_LOGS_ON_LAUNCH", "false").lower() in _TRUTHY,
        )
