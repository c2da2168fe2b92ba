"""Centralized logging configuration for orthoqutrit.

Console output goes to stderr so that stdout stays reserved for results.
Everything is also written to rotating log files in the configured log
directory, next to two structured JSONL streams.

Log directory structure::

    ~/.orthoqutrit/.logs/
    ├── orthoqutrit.log       # All Python logger output (rotating)
    ├── runs.log              # One record per CLI invocation (JSONL)
    └── discrepancies.log     # Oracle first zeros earlier than an analytic τ (JSONL)
"""
from __future__ import annotations

import glob
import json
import logging
import logging.handlers
import os
import sys
import time
from pathlib import Path
from typing import Any, Optional

# Module-level log directory, set by setup_logging()
_log_dir: Optional[str] = None

run_logger = logging.getLogger("orthoqutrit._runs")
discrepancy_logger = logging.getLogger("orthoqutrit._discrepancies")


def get_log_dir() -> str:
    """Return the configured log directory, falling back to default."""
    if _log_dir:
        return _log_dir
    default = str(Path(os.path.expanduser("~")) / ".orthoqutrit" / ".logs")
    return os.getenv("ORTHOQUTRIT_LOG_DIR") or default


def clear_logs(log_dir: str) -> None:
    """Remove ``*.log`` files (and their rotations) from the log directory.

    Called before any handlers are attached so no file is held open.
    """
    if not os.path.isdir(log_dir):
        return
    for pattern in ("*.log", "*.log.*"):
        for path in glob.glob(os.path.join(log_dir, pattern)):
            try:
                os.remove(path)
            except OSError:
                pass


def setup_logging(log_dir: str, log_level: str = "warning", *, clear_on_launch: bool = False) -> None:
    """Configure stderr and rotating-file handlers plus the JSONL loggers.

    Safe to call more than once; handlers are replaced, not duplicated.
    """
    global _log_dir
    _log_dir = log_dir

    if clear_on_launch:
        clear_logs(log_dir)

    os.makedirs(log_dir, exist_ok=True)

    level = getattr(logging, log_level.upper(), logging.WARNING)

    # ── Root logger: stderr + rotating file ──────────────────
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    fmt = logging.Formatter(
        "%(asctime)s [%(name)s] %(levelname)s: %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S",
    )

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level)
    console.setFormatter(fmt)
    root.addHandler(console)

    file_handler = logging.handlers.RotatingFileHandler(
        os.path.join(log_dir, "orthoqutrit.log"),
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=5,
        encoding="utf-8",
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(fmt)
    root.addHandler(file_handler)

    # ── Structured streams (JSONL) ───────────────────────────
    _setup_jsonl_logger(run_logger, os.path.join(log_dir, "runs.log"))
    _setup_jsonl_logger(discrepancy_logger, os.path.join(log_dir, "discrepancies.log"))

    logging.getLogger("orthoqutrit").info(
        "Logging initialized: log_dir=%s, level=%s", log_dir, log_level
    )


def _setup_jsonl_logger(logger_instance: logging.Logger, path: str) -> None:
    """Configure a logger to write raw JSONL messages to a rotating file."""
    logger_instance.setLevel(logging.INFO)
    logger_instance.propagate = False
    for handler in list(logger_instance.handlers):
        logger_instance.removeHandler(handler)
        handler.close()

    handler = logging.handlers.RotatingFileHandler(
        path,
        maxBytes=10 * 1024 * 1024,  # 10 MB
        backupCount=5,
        encoding="utf-8",
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger_instance.addHandler(handler)


def get_runs_log_path() -> str:
    return os.path.join(get_log_dir(), "runs.log")


def get_discrepancies_log_path() -> str:
    return os.path.join(get_log_dir(), "discrepancies.log")


# ── Structured logging helpers ───────────────────────────────


def _timestamp() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def log_run(
    command: str,
    params: dict[str, Any],
    exit_code: int,
    duration_ms: float | None = None,
    error: str | None = None,
) -> None:
    """Record one CLI invocation in the runs log."""
    record: dict[str, Any] = {
        "ts": _timestamp(),
        "command": command,
        "params": params,
        "exit_code": exit_code,
    }
    if duration_ms is not None:
        record["duration_ms"] = round(duration_ms, 1)
    if error:
        record["error"] = error[:2000]
    try:
        run_logger.info(json.dumps(record, default=str))
    except Exception:  # noqa: BLE001
        pass


def log_discrepancy(
    triad: tuple[float, float, float],
    omega21: float,
    omega32: float,
    claimed_tau: float,
    oracle_first_zero: float,
) -> None:
    """Record an analytic τ that is not the first orthogonality time."""
    record = {
        "ts": _timestamp(),
        "triad": list(triad),
        "omega21": omega21,
        "omega32": omega32,
        "claimed_tau": claimed_tau,
        "oracle_first_zero": oracle_first_zero,
        "ratio": claimed_tau / oracle_first_zero if oracle_first_zero else None,
    }
    try:
        discrepancy_logger.info(json.dumps(record, default=str))
    except Exception:  # noqa: BLE001
        pass
