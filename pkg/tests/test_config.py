"""Tests for config module."""
import pytest

from core.config import BUILTIN_DEFAULTS, RunConfig, load_defaults, run_samples, spawn_rngs
from core.errors import InvalidGroupSpecError, InvalidRingSpecError


def test_load_project_defaults():
    """Test the shipped defaults file loads with every section."""
    defaults = load_defaults()
    assert defaults["thresholds"]["hypothesis"] == 1e-8
    assert defaults["bench"]["sizes"] == [64, 256, 1024, 4096]
    assert defaults["demo"]["max_order"] == 8


def test_missing_file_falls_back(tmp_path):
    """Test a missing defaults file yields the built-in values."""
    assert load_defaults(str(tmp_path / "absent.yaml")) == BUILTIN_DEFAULTS


def test_partial_file_is_merged(tmp_path):
    """Test nested keys override without dropping siblings."""
    path = tmp_path / "defaults.yaml"
    path.write_text("samples: 7\nthresholds:\n  eigen: 1.0e-5\n", encoding="utf-8")
    defaults = load_defaults(str(path))
    assert defaults["samples"] == 7
    assert defaults["thresholds"]["eigen"] == 1e-5
    assert defaults["thresholds"]["hypothesis"] == 1e-8


def test_overrides_skip_none():
    """Test None overrides keep the defaults."""
    cfg = RunConfig.from_defaults(BUILTIN_DEFAULTS, group="Z3", ring="f64", seed=None, samples=12)
    assert (cfg.group, cfg.ring, cfg.seed, cfg.samples) == ("Z3", "f64", 0, 12)


def test_validate_parses_specs():
    """Test validate returns the parsed group and ring."""
    group, ring = RunConfig(group="Z4xZ2", ring="zmod:5").validate()
    assert group.order == 8
    assert ring.spec == "zmod:5"


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"group": "Z0"}, InvalidGroupSpecError),
        ({"ring": "zmod:1"}, InvalidRingSpecError),
        ({"samples": 0}, ValueError),
        ({"seed": -1}, ValueError),
        ({"fmt": "xml"}, ValueError),
        ({"workers": 0}, ValueError),
    ],
)
def test_validate_rejects(kwargs, error):
    """Test invalid specs and numbers raise before any work."""
    base = {"group": "Z2", "ring": "q"}
    base.update(kwargs)
    with pytest.raises(error):
        RunConfig(**base).validate()


def test_as_dict_records_generator():
    """Test the config echo names the generator."""
    out = RunConfig(group="Z2", ring="q", seed=9).as_dict()
    assert out["seed"] == 9
    assert out["generator"]["name"] == "PCG64"


def test_run_samples_deterministic():
    """Test sample results depend on seed only, not on worker count."""
    def draw(rng):
        return float(rng.standard_normal())

    serial = run_samples(draw, seed=11, samples=16, workers=1)
    threaded = run_samples(draw, seed=11, samples=16, workers=4)
    assert serial == threaded
    assert serial != run_samples(draw, seed=12, samples=16)
    assert len(spawn_rngs(3, 5)) == 5
