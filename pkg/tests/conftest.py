import os

import pytest
from hypothesis import HealthCheck, settings

from src.fields.gf2k import gf2k
from src.groups.handles import CyclicGroup, Sl2Group, SymGroup

settings.register_profile("dev", max_examples=25, deadline=None)
settings.register_profile(
    "ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture
def sym3():
    return SymGroup(3)


@pytest.fixture
def sym4():
    return SymGroup(4)


@pytest.fixture
def sl2_gf2():
    return Sl2Group(gf2k(1))


@pytest.fixture
def sl2_gf4():
    return Sl2Group(gf2k(2))


@pytest.fixture
def cyclic6():
    return CyclicGroup(6)


@pytest.fixture
def out_dir(tmp_path, monkeypatch):
    """Isolated output directory, also picked up as the environment default."""
    path = tmp_path / "output"
    monkeypatch.setenv("FOLNERLAB_OUT_DIR", str(path))
    return path
