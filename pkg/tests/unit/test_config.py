from pathlib import Path

import pytest

from copx.exceptions import (
    ExitCode,
    InstanceError,
    RegimeError,
    SizeCapError,
    UnboundedError,
    exit_code_for,
)
from copx.typing import Family, Regime
from copx.utils.cli.certify import CertifyArgs
from copx.utils.cli.config import RESULTS_DIR_ENV, Config
from copx.utils.cli.family import FamilyArgs
from copx.utils.cli.verify import SuiteArgs


def test_defaults():
    config = Config()
    assert config.full_lattice_cap == 14
    assert config.cube_cap == 20
    assert config.hull_dim_cap == 8
    assert config.workers == 1
    assert config.seed == 0
    assert config.results_dir == Path("copx-results")


def test_results_dir_env_override(monkeypatch: pytest.MonkeyPatch, tmp_path: Path):
    monkeypatch.setenv(RESULTS_DIR_ENV, str(tmp_path))
    assert Config(results_dir="elsewhere").results_dir == tmp_path


@pytest.mark.parametrize(
    "kwargs",
    [
        {"workers": 0},
        {"seed": -1},
        {"hull_dim_cap": 0},
        {"full_lattice_cap": 21},
        {"full_lattice_cap": 10, "cube_cap": 8},
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        Config(**kwargs)


def test_config_serialization(tmp_path: Path):
    config = Config(seed=3, results_dir=tmp_path, progress=False)
    data = config.to_dict(convert_enum_to_str=True)
    assert data["results_dir"] == str(tmp_path)
    assert Config.from_dict(data) == config
    assert config.to_dict(include={"seed"}) == {"seed": 3}
    assert "seed" not in config.to_dict(exclude={"seed"})
    with pytest.raises(ValueError):
        config.to_dict(include={"seed"}, exclude={"workers"})
    assert "hull_dim_cap" in set(Config.fields())


def test_config_clone():
    config = Config(progress=False)
    clone = config.clone(seed=9)
    assert clone.seed == 9
    assert config.seed == 0


def test_family_args_from_dict():
    args = FamilyArgs.from_dict({"family": "tsp", "cities": 4})
    assert args.family == Family.tsp_tours
    assert args.to_dict(convert_enum_to_str=True)["family"] == "tsp"


def test_certify_args():
    args = CertifyArgs(c="1, -1/2 ,0", vertex=0, regime="nonneg")
    assert args.inline_weights() == ("1", "-1/2", "0")
    assert args.regime == Regime.nonneg
    assert CertifyArgs(random=10).inline_weights() is None


@pytest.mark.parametrize(
    "kwargs",
    [
        {"vertex": 0},
        {"c": "1,1", "vertex": 0, "all": True},
        {"c": "1,1"},
        {"c": "1,1", "vertex": -1},
        {"c": "1,1", "vertex": 0, "regime": "sometimes"},
        {"random": 0},
    ],
)
def test_invalid_certify_args(kwargs):
    with pytest.raises(ValueError):
        CertifyArgs(**kwargs)


def test_certify_args_weights_file_must_exist(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        CertifyArgs(weights=tmp_path / "missing.json", vertex=0)


def test_suite_args():
    assert SuiteArgs().trials == 200
    assert SuiteArgs(suite="shift").suite.value == "shift"
    with pytest.raises(ValueError):
        SuiteArgs(trials=0)


@pytest.mark.parametrize(
    ("exc", "code"),
    [
        (SizeCapError("n", 30, 20), ExitCode.size_cap),
        (UnboundedError((1, 0)), ExitCode.size_cap),
        (InstanceError("bad"), ExitCode.usage),
        (RegimeError("bad"), ExitCode.usage),
        (ValueError("bad"), ExitCode.usage),
    ],
)
def test_exit_codes(exc: Exception, code: ExitCode):
    assert exit_code_for(exc) == code
