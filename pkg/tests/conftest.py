import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data" / "oracles.json"


@pytest.fixture(scope="session")
def oracles():
    return json.loads(DATA.read_text())


def rel(got, want):
    return abs(got - want) / max(1.0, abs(want))
