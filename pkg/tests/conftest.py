from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from centralizer_lab.catalog import default_catalog

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

CATALOG = default_catalog()
ALL_NAMES = [e.name for e in CATALOG.entries()]
SMALL_NAMES = [e.name for e in CATALOG.entries() if e.order <= 15]


@pytest.fixture(scope="session")
def catalog():
    return CATALOG


def group(name: str):
    return CATALOG.get(name)
