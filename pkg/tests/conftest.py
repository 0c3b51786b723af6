import pytest

from ybcubes.complex import build_complex
from ybcubes.fixtures import fixture
from ybcubes.presentation import Label, Presentation
from ybcubes.ybmap import derive_R


@pytest.fixture(scope="session")
def gamma1():
    return fixture("gamma1")


@pytest.fixture(scope="session")
def gamma2():
    return fixture("gamma2")


@pytest.fixture(scope="session")
def R1(gamma1):
    return derive_R(build_complex(gamma1))


@pytest.fixture(scope="session")
def R2(gamma2):
    return derive_R(build_complex(gamma2))


def two_by_two(word):
    """Labels a, A=a^-1 (color 0), b, B=b^-1 (color 1) and one relator."""
    labels = [Label(0, "a1", 0, 1), Label(1, "a2", 0, 0), Label(2, "b1", 1, 3), Label(3, "b2", 1, 2)]
    ids = {"a": 0, "A": 1, "b": 2, "B": 3}
    return Presentation.from_squares(labels, [[ids[c] for c in word]], name=word)


@pytest.fixture
def torus():
    return two_by_two("abAB")


@pytest.fixture
def klein():
    return two_by_two("abAb")
