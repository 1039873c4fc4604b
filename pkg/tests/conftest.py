import json
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings

from krtree.inputs import load_fixture
from oracle import Brute

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def fixture_doc(name):
    return json.loads(resources.files("krtree").joinpath(f"fixtures/{name}.json").read_text())


@pytest.fixture(scope="session")
def lz2():
    return load_fixture("lz2")


@pytest.fixture(scope="session")
def t2():
    return load_fixture("t2")


@pytest.fixture(scope="session")
def sem41():
    return load_fixture("sem41")


@pytest.fixture(scope="session")
def brute():
    return {name: Brute.from_doc(fixture_doc(name)) for name in ("lz2", "t2", "sem41")}
