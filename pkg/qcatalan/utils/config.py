"""
Runtime settings: defaults, QCATALAN_* environment variables, an optional key=value file, then flags
"""
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

from dotenv import dotenv_values
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

ENV_PREFIX = "QCATALAN_"
DEFAULT_ENUMERATION_BUDGET = 10_000_000
DEFAULT_MATRIX_BUDGET = 13_000
DEFAULT_RANK_MAX_GENERATORS = 12


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix=ENV_PREFIX, extra="ignore")

    enumeration_budget: int = Field(DEFAULT_ENUMERATION_BUDGET, gt=0)
    matrix_budget: int = Field(DEFAULT_MATRIX_BUDGET, gt=0)
    rank_max_generators: int = Field(DEFAULT_RANK_MAX_GENERATORS, gt=0)
    output_format: Literal["json", "csv", "table"] = "json"
    jobs: int = Field(1, ge=1)
    verbose: bool = False

    oeis_enabled: bool = True
    oeis_endpoint: str = "https://oeis.org/search"
    oeis_cache_dir: Path = Path("~/.cache/qcatalan/oeis")
    oeis_offline: bool = False
    oeis_timeout: float = Field(15.0, gt=0)

    posthog_key: Optional[str] = None
    posthog_host: str = "https://us.i.posthog.com"

    def cache_dir(self) -> Path:
        return self.oeis_cache_dir.expanduser()


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Parse a key=value settings file. Keys may carry the QCATALAN_ prefix or not;
    blank values are dropped.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None or value == "":
            continue
        key = key.strip()
        if key.upper().startswith(ENV_PREFIX):
            key = key[len(ENV_PREFIX):]
        values[key.lower()] = value
    return values


def get_settings(config_path: Optional[Union[str, Path]] = None, **overrides: Any) -> Settings:
    """
    Build settings for one run. A config file overrides the environment and
    explicit overrides (command-line flags) win over both; None overrides are ignored.
    """
    values: Dict[str, Any] = {}
    if config_path is not None:
        values.update(read_config_file(config_path))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)
