import os
import sys

import pytest

# Add the repository root to the path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.hypergraph import Hypergraph  # noqa: E402


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run the Monte-Carlo acceptance checks')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: minutes-scale Monte-Carlo check, needs --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def no_log_files(monkeypatch):
    """Keep runs from writing log files into the working tree."""
    monkeypatch.setenv('CU_SKETCH_LAB_LOG_DIR', '')
    monkeypatch.setenv('CU_SKETCH_LAB_JOBS', '1')


@pytest.fixture
def path_graph():
    """a-b-c as vertices 0-1-2."""
    return Hypergraph(n=3, k=2, edges=[(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return Hypergraph(n=3, k=2, edges=[(0, 1), (1, 2), (0, 2)])
