import pytest

from vpq.scalar import ScalarContext


@pytest.fixture(scope="session")
def ctx():
    """Default rational evaluation point."""
    return ScalarContext.numeric(2, 3)


@pytest.fixture(scope="session")
def ctx57():
    return ScalarContext.numeric("5", "7")


@pytest.fixture(scope="session")
def sym():
    """Fully formal p, q."""
    return ScalarContext.symbolic()
