from __future__ import annotations

import pytest

from twistfield import algebra3, gf
from twistfield.engine import census


@pytest.fixture(scope="session")
def tower3():
    return gf.FieldTower.build(3)


@pytest.fixture(scope="session")
def tower3_alt():
    # the t^3 - t - 1 presentation, handy because sigma(t) = t + 1 there
    return gf.FieldTower.build(3, f=(2, 2, 0, 1))


@pytest.fixture(scope="session")
def tower4():
    return gf.FieldTower.build(4)


@pytest.fixture(scope="session")
def tower5():
    return gf.FieldTower.build(5)


@pytest.fixture(scope="session")
def comm3(tower3):
    """q=3, c=-1: the commutative twisted field."""
    return algebra3.TwistedFieldSpec(tower3, 2)


@pytest.fixture(scope="session")
def alg3(comm3):
    return algebra3.to_structure_constants(comm3)


@pytest.fixture(scope="session")
def inv3(alg3):
    return census.build_inventory(alg3)


@pytest.fixture(scope="session")
def noncomm4(tower4):
    return algebra3.TwistedFieldSpec(tower4, algebra3.valid_c_values(tower4)[0])


@pytest.fixture(scope="session")
def alg4(noncomm4):
    return algebra3.to_structure_constants(noncomm4)


@pytest.fixture(scope="session")
def inv4(alg4):
    return census.build_inventory(alg4)
