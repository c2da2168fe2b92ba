import logging

import pytest

from orthoqutrit.core import logging_config


@pytest.fixture(autouse=True)
def _isolated_logs(tmp_path, monkeypatch):
    """Point the log directory at tmp_path and drop handlers afterwards."""
    monkeypatch.setenv("ORTHOQUTRIT_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.delenv("ORTHOQUTRIT_THREADS", raising=False)
    monkeypatch.delenv("ORTHOQUTRIT_LOG_LEVEL", raising=False)
    monkeypatch.delenv("ORTHOQUTRIT_CLEAR_LOGS_ON_LAUNCH", raising=False)
    yield
    for log in (logging.getLogger(), logging_config.run_logger, logging_config.discrepancy_logger):
        for handler in list(log.handlers):
            log.removeHandler(handler)
            handler.close()
    logging_config._log_dir = None
