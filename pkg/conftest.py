"""
Shared pytest setup: import path, markers and fixtures
"""

import random
import sys
from pathlib import Path

import pytest

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from core.config import Config  # noqa: E402
from core.graph import ClusterGraph, cluster_to_graph  # noqa: E402
from core.instance import Instance, Measure, Variant  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: timing and large-instance checks")


@pytest.fixture
def worked_pair():
    """u1..u6 = 0..5, v1, v2 = 6, 7, w = 8."""
    g1 = ClusterGraph.from_clusters(9, [range(6), [6, 7], [8]])
    g2 = ClusterGraph.from_clusters(9, [[0, 1, 2, 6, 7], [3, 4, 5, 8]])
    return g1, g2


@pytest.fixture
def worked_instance(worked_pair):
    g1, g2 = worked_pair
    return Instance(Variant.EDITING, Measure.MATCHING_DIST, cluster_to_graph(g1), g2, 0, 4)


@pytest.fixture
def rng():
    return random.Random(1729)


@pytest.fixture
def config():
    return Config()
