import pytest
from hypothesis import HealthCheck, settings

from awgb.awside import aw_relations
from awgb.ideal import IdealOracle
from awgb.presentation import relations

settings.register_profile("awgb", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("awgb")


@pytest.fixture(scope="session")
def oracle3():
    return IdealOracle(relations(3), 6, cap=6)


@pytest.fixture(scope="session")
def oracle4():
    return IdealOracle(relations(4), 6, cap=8)


@pytest.fixture(scope="session")
def aw_oracle4():
    return IdealOracle(aw_relations(4), 6, cap=8)
