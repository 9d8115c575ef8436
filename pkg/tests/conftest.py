"""Shared fixtures for the Pfaffian Atlas test suite."""

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from pfaffian_atlas.ideals import CogeneratorSpec  # noqa: E402
from pfaffian_atlas.tableaux import Tableau, enumerate_standard_tableaux  # noqa: E402

RUN_SLOW = os.getenv("PFAFFIAN_ATLAS_RUN_SLOW", "").strip().lower() in ("1", "true", "yes", "on")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive suite, set PFAFFIAN_ATLAS_RUN_SLOW=true to run")


def pytest_collection_modifyitems(config, items):
    if RUN_SLOW:
        return
    skip = pytest.mark.skip(reason="set PFAFFIAN_ATLAS_RUN_SLOW=true to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def example_tableau():
    return Tableau(columns=((1, 3, 4, 5), (2, 3), (2, 5)))


@pytest.fixture
def spec_1346():
    return CogeneratorSpec(alpha=(1, 3, 4, 6), n=6)


@pytest.fixture
def spec_1245():
    return CogeneratorSpec(alpha=(1, 2, 4, 5), n=6)


@pytest.fixture(scope="session")
def small_corpus():
    return enumerate_standard_tableaux(5, 6)
