import random

import pytest

from factorsys.leavitt import LeavittPathAlgebra, rose
from factorsys.models import l12_system


@pytest.fixture(scope="session")
def l12_window3():
    return l12_system(3)


@pytest.fixture(scope="session")
def l12_window2():
    return l12_system(2)


@pytest.fixture(scope="session")
def lpa():
    return LeavittPathAlgebra(rose(2))


@pytest.fixture
def rng():
    return random.Random(20261016)
