import pytest

from infoeval import fixtures


def _by_name(stem):
    return {m.model_name: m for m in fixtures.load(stem)}


@pytest.fixture(scope="session")
def binary_models():
    """Six 2-class models on a 90/10 split, M1-M6."""
    return _by_name("binary_models")


@pytest.fixture(scope="session")
def class_share_models():
    """Canonical departures at 94/6 (a) and 95/5 (b) splits."""
    return _by_name("class_share_study")


@pytest.fixture(scope="session")
def three_class_models():
    """Nine 3-class single-departure models on an 80/15/5 split."""
    return _by_name("three_class_models")


@pytest.fixture(scope="session")
def reject_tradeoff_models():
    """Two models with equal rates but different reject placement."""
    return _by_name("reject_tradeoff")
