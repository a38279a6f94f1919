"""
Tests for configuration loading
"""

import pytest

from core.config import DEFAULT_ORACLE_CAP, Config


def _write_config(path, body):
    path.write_text(body)
    return str(path)


MINIMAL = """
solver:
  oracle:
    cap: "${DCE_TEST_CAP:-9}"
kernel: {}
generators:
  default_seed: 3
io: {}
app: {}
"""


def test_configuration(config):
    assert config.get_default_algo() == "auto"
    assert config.get("io.indent") == 2
    assert config.get("kernel.check_bounds") is True
    assert config.get("missing.key", "fallback") == "fallback"


def test_oracle_cap_from_environment(monkeypatch):
    monkeypatch.setenv("DCE_ORACLE_CAP", "13")
    assert Config().get_oracle_cap() == 13
    monkeypatch.delenv("DCE_ORACLE_CAP")
    assert Config().get_oracle_cap() == DEFAULT_ORACLE_CAP


def test_placeholder_default(tmp_path, monkeypatch):
    monkeypatch.delenv("DCE_TEST_CAP", raising=False)
    config = Config(_write_config(tmp_path / "settings.yaml", MINIMAL))
    assert config.get_oracle_cap() == 9
    assert config.get_default_seed() == 3


def test_invalid_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("DCE_TEST_CAP", "many")
    config = Config(_write_config(tmp_path / "settings.yaml", MINIMAL))
    with pytest.raises(ValueError):
        config.get_oracle_cap()


def test_missing_section(tmp_path):
    with pytest.raises(ValueError):
        Config(_write_config(tmp_path / "settings.yaml", "solver: {}\n"))


def test_missing_file(tmp_path):
    with pytest.raises(RuntimeError):
        Config(str(tmp_path / "absent.yaml"))


def test_update(config):
    config.update("solver.oracle.cap", 6)
    assert config.get_oracle_cap() == 6
    config.update("extra.nested.value", "x")
    assert config.get("extra.nested.value") == "x"


def test_section_getters(config, tmp_path):
    assert config.get_solver_config()["default_algo"] == "auto"
    assert config.get_kernel_config()["check_bounds"] is True
    assert config.get_generator_config()["random"]["n"] == 8
    assert config.get_io_config() == {"indent": 2}
    assert config.get_app_config()["logging"]["backup_count"] == 5

    minimal = Config(_write_config(tmp_path / "settings.yaml", MINIMAL))
    assert minimal.get_kernel_config() == {} and minimal.get_io_config() == {}
    assert minimal.get_default_algo() == "auto"
