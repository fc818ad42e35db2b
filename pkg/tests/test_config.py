"""Tests for the settings manager."""

import importlib

import pytest

from orthozeros.config.manager import ConfigSection, OrthoZerosConfig
from orthozeros.utils.helpers import get_data_path


@pytest.fixture
def settings_file(tmp_path):
    path = tmp_path / "config.ini"
    path.write_text("[quadrature]\nrel_tol = 1e-6\n\n[montecarlo]\nthreads = 3\n")
    return path


def test_explicit_file(settings_file):
    cfg = OrthoZerosConfig(settings_file)
    assert cfg.config_file_path == settings_file
    assert cfg.quadrature.rel_tol == 1e-6
    assert cfg.montecarlo.threads == 3


def test_missing_keys_take_defaults(settings_file):
    cfg = OrthoZerosConfig(settings_file)
    assert cfg.quadrature.max_levels == 60
    assert cfg.zeros.reality_tol == 1e-8
    assert cfg.montecarlo.seed == 42
    assert cfg.kernels.overflow_threshold == 1e150


def test_sections_are_wrapped(settings_file):
    cfg = OrthoZerosConfig(settings_file)
    section = cfg.zeros
    assert isinstance(section, ConfigSection)
    assert 'grid_factor' in section
    assert section['grid_factor'] == section.grid_factor == 64
    assert section.get('missing', 'fallback') == 'fallback'


def test_unknown_key(settings_file):
    cfg = OrthoZerosConfig(settings_file)
    with pytest.raises(AttributeError):
        cfg.quadrature.no_such_key
    with pytest.raises(AttributeError):
        cfg.no_such_section


def test_invalid_values_fall_back(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[quadrature]\nrel_tol = not-a-number\n")
    cfg = OrthoZerosConfig(path)
    assert cfg.quadrature.rel_tol == 1e-8


def test_environment_variable(settings_file, monkeypatch):
    monkeypatch.setenv(OrthoZerosConfig.ENV_VAR, str(settings_file))
    cfg = OrthoZerosConfig()
    assert cfg.config_file_path == settings_file
    assert cfg.montecarlo.threads == 3


def test_reload(settings_file, tmp_path):
    cfg = OrthoZerosConfig(settings_file)
    other = tmp_path / "other.ini"
    other.write_text("[montecarlo]\nseed = 7\n")
    cfg.reload(other)
    assert cfg.montecarlo.seed == 7
    assert cfg.montecarlo.threads == 1


@pytest.mark.parametrize("module", [
    'orthozeros', 'orthozeros.config', 'orthozeros.measure', 'orthozeros.orthopoly', 'orthozeros.kernels',
    'orthozeros.kacrice', 'orthozeros.equilibrium', 'orthozeros.montecarlo', 'orthozeros.cli',
])
def test_package_imports(module):
    assert importlib.import_module(module) is not None


def test_packaged_defaults_validate():
    cfg = OrthoZerosConfig(get_data_path('config', 'config.ini'))
    assert cfg.logging.level == 'WARNING'
    assert 'format' not in cfg.logging


def test_section_is_a_mapping(settings_file):
    section = OrthoZerosConfig(settings_file).montecarlo
    assert dict(section) == {'trials': 1000, 'seed': 42, 'sigma': 1.0, 'threads': 3}
    assert len(section) == 4
    assert sorted(section.keys()) == ['seed', 'sigma', 'threads', 'trials']
