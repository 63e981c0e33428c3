import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=60,
)
settings.load_profile("suite")


@pytest.fixture
def rnd():
    # Plain stdlib RNG for shuffling test inputs; the library's own
    # generator is under test elsewhere and should not be used here.
    return random.Random(0xC0FFEE)
