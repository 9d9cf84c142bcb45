import pytest

from spinstats import make_rng


@pytest.fixture
def rng():
    """Fresh deterministic generator per test."""
    return make_rng(987654321)
