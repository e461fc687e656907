import pytest

from relcert import corpus


@pytest.fixture(scope="session")
def pt():
    return corpus.load("pt")


@pytest.fixture(scope="session")
def arrow():
    return corpus.load("arrow")


@pytest.fixture(scope="session")
def walkiso():
    return corpus.load("walkiso")


@pytest.fixture(scope="session")
def bz2cat():
    return corpus.load("bz2")


@pytest.fixture(scope="session")
def c2of3():
    return corpus.load("c2of3")


@pytest.fixture(scope="session")
def shape_m1_2():
    return corpus.load("shape_-1_2")


@pytest.fixture(scope="session")
def htac_fail():
    return corpus.load("htac_fail")
