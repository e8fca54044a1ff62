from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from kgraph.fixtures import fixture
from kgraph.paths import KGraph

settings.register_profile(
    "repo", deadline=None, max_examples=40, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

ACYCLIC = ["G_SQUARE", "G_LAMBDA1", "OMEGA(1,3)", "OMEGA(2,(1,1))", "G_NONORTH"]
ALL_FIXTURES = ACYCLIC + ["G_LOOP2"]


@pytest.fixture(scope="session")
def graphs():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = KGraph(fixture(name))
        return cache[name]

    return get
