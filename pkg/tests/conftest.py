"""Shared fixtures.

The censuses are session-scoped: several test modules and acceptance
criteria consume the same reports, and the (2,3,3) census is the one
genuinely expensive object in the suite.
"""

import pytest

from freepoint import ParamSet, census, make_tower


@pytest.fixture(scope="session")
def tower_q3():
    return make_tower(3)


@pytest.fixture(scope="session")
def census_222():
    return census(ParamSet(2, 2, 2), histogram=True)


@pytest.fixture(scope="session")
def census_223():
    return census(ParamSet(2, 2, 3), histogram=True)


@pytest.fixture(scope="session")
def census_233():
    return census(ParamSet(2, 3, 3), histogram=True)


@pytest.fixture(scope="session")
def census_224():
    return census(ParamSet(2, 2, 4), histogram=True)
