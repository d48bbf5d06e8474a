"""Tests for environment-driven configuration."""
import pytest
from conwaygordon.utils import config

@pytest.mark.utils
def test_defaults(monkeypatch):
    """Test defaults when nothing is set."""
    for name in ("CONWAYGORDON_JOBS", "CONWAYGORDON_TRIALS", "CONWAYGORDON_SEED"):
        monkeypatch.delenv(name, raising=False)
    assert config.default_jobs() == 1
    assert config.default_trials() == 50
    assert config.default_seed() == 0

@pytest.mark.utils
def test_environment_overrides(monkeypatch):
    """Test values read from the environment."""
    monkeypatch.setenv("CONWAYGORDON_JOBS", "4")
    monkeypatch.setenv("CONWAYGORDON_TRIALS", "0")
    monkeypatch.setenv("CONWAYGORDON_SEED", " ")
    assert config.default_jobs() == 4
    assert config.default_trials() == 0
    assert config.default_seed() == 0

@pytest.mark.utils
def test_invalid_environment(monkeypatch):
    """Test malformed and out-of-range values."""
    monkeypatch.setenv("CONWAYGORDON_JOBS", "many")
    with pytest.raises(ValueError) as exc_info:
        config.default_jobs()
    assert "CONWAYGORDON_JOBS must be an integer" in str(exc_info.value)
    monkeypatch.setenv("CONWAYGORDON_JOBS", "0")
    with pytest.raises(ValueError) as exc_info:
        config.default_jobs()
    assert "must be at least 1" in str(exc_info.value)

@pytest.mark.utils
def test_reports_dir(monkeypatch, tmp_path):
    """Test that the report directory is created under the data directory."""
    monkeypatch.setattr(config, "DEFAULT_OUTPUT_DIR", str(tmp_path / "data"))
    path = config.reports_dir()
    assert path == tmp_path / "data" / "reports"
    assert path.is_dir()
