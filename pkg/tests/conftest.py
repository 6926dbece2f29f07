import logging
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from wellcs.domain.value_objects import GCS, SpaceGrid, WellParams

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture(autouse=True)
def restore_root_logger():
    """CLI invocations reconfigure the root logger against streams that close with the runner."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def params():
    return WellParams()


@pytest.fixture
def figure1_spec():
    return GCS(n0=500.0, sigma0=5.0, phi0=math.pi / 2.0)


@pytest.fixture
def figure2_spec():
    return GCS(n0=50.0, sigma0=5.0, phi0=math.pi / 2.0)


@pytest.fixture
def fine_grid(params):
    return SpaceGrid(params=params, count=8192)


@pytest.fixture
def configs_dir():
    return CONFIGS


@pytest.fixture
def runner():
    return CliRunner()
