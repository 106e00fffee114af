import json
import logging

import pytest
from loguru import logger

from extroot.configuration import ExtrootConfig
from extroot.solver.system import SystemSpec


@pytest.fixture
def config() -> ExtrootConfig:
    return ExtrootConfig()


@pytest.fixture
def caplog(caplog):
    """Route loguru records into pytest's caplog."""

    class PropagateHandler(logging.Handler):
        def emit(self, record):
            logging.getLogger(record.name).handle(record)

    handler_id = logger.add(PropagateHandler(), format="{message}", level="DEBUG")
    yield caplog
    logger.remove(handler_id)


@pytest.fixture
def sqrt6_system() -> SystemSpec:
    return SystemSpec.parse("Y - X1*X2", ["X1^2 - 2", "X2^2 - 3"])


@pytest.fixture
def double_root_system() -> SystemSpec:
    return SystemSpec.parse("(Y - X1)^2", ["X1^2 - 2*X1 + 1"])


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, doc) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write
