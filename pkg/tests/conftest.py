import pytest
from hypothesis import settings

from welter_designs import designs as ds
from welter_designs.distributions import game_distribution

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def shuffle():
    return ds.make_shuffle_s5612()


@pytest.fixture(scope="session")
def sts7():
    return ds.make_projective_sts(2)


@pytest.fixture(scope="session")
def sts9():
    return ds.make_affine_sts(2)


@pytest.fixture(scope="session")
def sts15():
    return ds.make_projective_sts(3)


@pytest.fixture(scope="session")
def s4511(shuffle):
    return ds.derived_design(shuffle, 11)


@pytest.fixture(scope="session")
def s2413():
    return ds.make_cyclic_design(13, [(0, 1, 3, 9)], 4, 2)


@pytest.fixture(scope="session")
def shuffle_report(shuffle):
    return game_distribution(shuffle)


@pytest.fixture(scope="session")
def s4511_report(s4511):
    return game_distribution(s4511)


@pytest.fixture(scope="session")
def sts9_report(sts9):
    return game_distribution(sts9)


@pytest.fixture(scope="session")
def sts7_report(sts7):
    return game_distribution(sts7)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
