from pathlib import Path

import pytest

from copx.data.families import builtin_instance
from copx.data.instance import Instance, default_labels
from copx.utils.cli.config import RESULTS_DIR_ENV, Config


@pytest.fixture(autouse=True)
def _no_results_dir_env(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv(RESULTS_DIR_ENV, raising=False)


@pytest.fixture
def results_dir(tmp_path: Path) -> Path:
    return tmp_path / "results"


@pytest.fixture
def config(results_dir: Path) -> Config:
    return Config(results_dir=results_dir, progress=False)


@pytest.fixture(scope="session")
def fig1() -> Instance:
    """spanning trees of the triangle: (0,1,1), (1,0,1), (1,1,0)"""
    return builtin_instance("fig1")


@pytest.fixture(scope="session")
def single_vertex() -> Instance:
    return Instance(n=2, labels=default_labels(2), vertices=[(1, 1)])


@pytest.fixture(scope="session")
def k4_trees() -> Instance:
    return builtin_instance("k4-trees")


@pytest.fixture(scope="session")
def k4_matchings() -> Instance:
    return builtin_instance("k4-matchings")


@pytest.fixture(scope="session")
def tsp4() -> Instance:
    return builtin_instance("tsp4")


@pytest.fixture(scope="session")
def tsp5() -> Instance:
    return builtin_instance("tsp5")
