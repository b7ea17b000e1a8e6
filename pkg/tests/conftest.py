import random

import pytest

from fibredburnside import groups


@pytest.fixture(scope="session")
def c1():
    return groups.cyclic(1)


@pytest.fixture(scope="session")
def c2():
    return groups.cyclic(2)


@pytest.fixture(scope="session")
def c3():
    return groups.cyclic(3)


@pytest.fixture(scope="session")
def c4():
    return groups.cyclic(4)


@pytest.fixture(scope="session")
def q8():
    return groups.quaternion8()


@pytest.fixture(scope="session")
def d8():
    return groups.dihedral(8)


@pytest.fixture(scope="session")
def s3():
    return groups.symmetric(3)


@pytest.fixture(scope="session")
def klein():
    return groups.group_from_spec("C2xC2")


@pytest.fixture()
def rng():
    return random.Random(20240811)
