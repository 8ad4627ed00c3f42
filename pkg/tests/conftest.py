import pytest

from app.schemas.run_config import ThetaConfig
from app.services.group_cache_service import GroupCacheService
from app.services.quadric_service import QuadricService
from app.services.variety_service import VarietyService, build_F
from app.services.weyl_service import WeylService


@pytest.fixture(scope="session")
def cache_path(tmp_path_factory):
    return str(tmp_path_factory.mktemp("cache") / "weyl_e6_group.json")


@pytest.fixture(scope="session")
def group(cache_path):
    table, _ = GroupCacheService.load_or_generate(cache_path)
    return table


@pytest.fixture(scope="session")
def F():
    return build_F()


@pytest.fixture(scope="session")
def invariants(group):
    return VarietyService.invariants(group)


@pytest.fixture(scope="session")
def family():
    return QuadricService.restrict_quadrics()


@pytest.fixture(scope="session")
def class_members(group):
    return WeylService.conjugacy_class_C(group)


@pytest.fixture(scope="session")
def octic(F):
    return VarietyService.factor_on_A1A1_space(F)[1]


@pytest.fixture
def theta_config():
    return ThetaConfig(truncation=8, tolerance=1e-8, sample_count=5)
