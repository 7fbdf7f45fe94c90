import pytest

from affine_group import find_wmax
from bruhat import enumerate_Wplus_ideal
from ko_analysis import build_rows
from weights import RankConfig


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    for name in ("RIGHTSETS_CACHE_DIR", "RIGHTSETS_THREADS", "RIGHTSETS_ORACLE_MAXLEN"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope="session")
def cfg3():
    return RankConfig(3)


@pytest.fixture(scope="session")
def cfg4():
    return RankConfig(4)


@pytest.fixture(scope="session")
def wmax3(cfg3):
    return find_wmax(cfg3)


@pytest.fixture(scope="session")
def wmax4(cfg4):
    return find_wmax(cfg4)


@pytest.fixture(scope="session")
def ideal3(wmax3, cfg3):
    return enumerate_Wplus_ideal(wmax3, cfg3)


@pytest.fixture(scope="session")
def ideal4(wmax4, cfg4):
    return enumerate_Wplus_ideal(wmax4, cfg4)


@pytest.fixture(scope="session")
def rows3(cfg3):
    return build_rows(cfg3)


@pytest.fixture(scope="session")
def rows4(cfg4):
    return build_rows(cfg4)
