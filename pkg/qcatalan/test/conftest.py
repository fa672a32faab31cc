import os
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Runs never see the developer's QCATALAN_* settings or their OEIS cache."""
    for key in list(os.environ):
        if key.startswith("QCATALAN_"):
            monkeypatch.delenv(key)
    monkeypatch.setenv("QCATALAN_OEIS_CACHE_DIR", str(tmp_path / "oeis"))
