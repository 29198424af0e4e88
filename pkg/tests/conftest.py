import pytest

from ominsim import build_network, full_permutation

# 8-input full permutation used as the worked example throughout the suite:
# sources 0..7 mapped to 7 0 5 2 3 6 1 4.
SHOWCASE_DESTS = (7, 0, 5, 2, 3, 6, 1, 4)


@pytest.fixture
def omega8():
    return build_network(8, "omega")


@pytest.fixture
def omega4():
    return build_network(4, "omega")


@pytest.fixture
def showcase(omega8):
    return full_permutation(omega8, SHOWCASE_DESTS)
