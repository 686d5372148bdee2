import os

os.environ.setdefault("BFORGE_LOG_TO_FILE", "false")
os.environ.setdefault("BFORGE_LOG_LEVEL", "WARNING")

import pytest  # noqa: E402

from src.constructions import build_abelian, build_case_i, build_case_ii, build_case_iii, build_negative  # noqa: E402


@pytest.fixture(scope="session")
def g51():
    return build_case_i(5, 1)


@pytest.fixture(scope="session")
def g71():
    return build_case_i(7, 1)


@pytest.fixture(scope="session")
def g31():
    return build_case_ii(1)


@pytest.fixture(scope="session")
def g22():
    return build_case_iii(2)


@pytest.fixture(scope="session")
def neg1():
    return build_negative(1)


@pytest.fixture(scope="session")
def c5():
    return build_abelian(5)
