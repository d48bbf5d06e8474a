"""Environment-driven defaults and application directories.

Values are read from the process environment after loading a ``.env`` file
from the working directory, if there is one:
- CONWAYGORDON_JOBS: worker processes for verification runs (default 1)
- CONWAYGORDON_TRIALS: sampled embeddings per member (default 50)
- CONWAYGORDON_SEED: master seed for trial seeds (default 0)
"""

import logging
import os
from pathlib import Path

from appdirs import user_data_dir
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables from .env file
load_dotenv()

# Configure app directories
APP_NAME = "conwaygordon"
APP_AUTHOR = "conwaygordon"
DEFAULT_OUTPUT_DIR = user_data_dir(APP_NAME, APP_AUTHOR)


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


def default_jobs() -> int:
    return _int_from_env("CONWAYGORDON_JOBS", 1, 1)


def default_trials() -> int:
    return _int_from_env("CONWAYGORDON_TRIALS", 50, 0)


def default_seed() -> int:
    return _int_from_env("CONWAYGORDON_SEED", 0, 0)


def reports_dir() -> Path:
    """Directory for saved verification reports, created on demand."""
    path = Path(DEFAULT_OUTPUT_DIR) / "reports"
    path.mkdir(parents=True, exist_ok=True)
    logger.debug(f"Using report directory {path}")
    return path
