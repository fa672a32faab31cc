from pathlib import Path

import pytest
from pydantic import ValidationError

from ..utils.config import DEFAULT_ENUMERATION_BUDGET, Settings, get_settings, read_config_file


def test_defaults():
    settings = get_settings()
    assert settings.enumeration_budget == DEFAULT_ENUMERATION_BUDGET
    assert settings.output_format == "json"
    assert settings.jobs == 1
    assert settings.posthog_key is None


def test_environment(monkeypatch):
    monkeypatch.setenv("QCATALAN_JOBS", "3")
    monkeypatch.setenv("QCATALAN_OEIS_OFFLINE", "true")
    settings = get_settings()
    assert settings.jobs == 3
    assert settings.oeis_offline


def test_config_file_keys(fixtures_dir):
    values = read_config_file(fixtures_dir / "settings.cfg")
    assert values == {"jobs": "2", "enumeration_budget": "5000", "matrix_budget": "777", "output_format": "table"}


def test_precedence(monkeypatch, fixtures_dir):
    monkeypatch.setenv("QCATALAN_JOBS", "5")
    monkeypatch.setenv("QCATALAN_VERBOSE", "1")
    settings = get_settings(fixtures_dir / "settings.cfg", matrix_budget=99, jobs=None)
    # file beats environment, flags beat the file, None flags are ignored
    assert settings.jobs == 2
    assert settings.matrix_budget == 99
    assert settings.enumeration_budget == 5000
    assert settings.verbose


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_config_file(tmp_path / "absent.cfg")


def test_invalid_values(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("jobs=0\n")
    with pytest.raises(ValidationError):
        get_settings(path)
    with pytest.raises(ValidationError):
        get_settings(output_format="yaml")


def test_cache_dir_expands_home():
    settings = Settings(oeis_cache_dir="~/oeis-cache")
    assert settings.cache_dir() == Path("~/oeis-cache").expanduser()
