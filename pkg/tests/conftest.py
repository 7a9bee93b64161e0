import random

import pytest

from thetalf.involutions import ThetaParams, standard_chain_classes, theta_word


@pytest.fixture
def rng():
    return random.Random(937)


@pytest.fixture(scope='session')
def chain2():
    return standard_chain_classes(2)


@pytest.fixture(scope='session')
def theta121():
    return theta_word(ThetaParams(1, 2, 1))


def sweep(h_max=8, ks=(2, 4, 6, 8)):
    for h in range(2, h_max + 1):
        for k in ks:
            for l in range(1, h):
                yield ThetaParams(l, k, h - l)
