import random

import pytest

from pak.padic import LogBranch, Qp


@pytest.fixture
def Q5():
    return Qp(5, 32)


@pytest.fixture
def Q2():
    return Qp(2, 40)


@pytest.fixture
def br5(Q5):
    return LogBranch.iwasawa(Q5)


@pytest.fixture
def rng():
    return random.Random(20260808)
