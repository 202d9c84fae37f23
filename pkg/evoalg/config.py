"""
Runtime configuration read from the environment.

A ``.env`` file in the working directory is honoured through python-dotenv.

Variables:
    - EVOALG_CORPUS: corpus directory (default: the bundled corpus)
    - EVOALG_PRIME: prime used for randomized work (default: 10007)
    - EVOALG_SEED: default random seed (default: 0)
    - EVOALG_LOG_LEVEL: log level name for the command line (default: WARNING)
    - EVOALG_MAX_RETRIES: resampling bound for random instances (default: 16)
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

BUNDLED_CORPUS = Path(__file__).resolve().parent / "corpus"
DEFAULT_PRIME = 10007
DEFAULT_MAX_RETRIES = 16


@dataclass(frozen=True)
class Settings:
    """Resolved configuration values."""

    corpus_path: Path
    prime: int
    seed: int
    log_level: str
    max_retries: int


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def load_settings() -> Settings:
    """
    Load settings from the process environment and an optional ``.env`` file.

    Returns:
        Settings with every field resolved.

    Example:
        >>> settings = load_settings()
        >>> settings.prime
        10007
    """
    load_dotenv()

    corpus = os.environ.get("EVOALG_CORPUS")
    settings = Settings(
        corpus_path=Path(corpus) if corpus else BUNDLED_CORPUS,
        prime=_int_env("EVOALG_PRIME", DEFAULT_PRIME),
        seed=_int_env("EVOALG_SEED", 0),
        log_level=os.environ.get("EVOALG_LOG_LEVEL", "WARNING"),
        max_retries=_int_env("EVOALG_MAX_RETRIES", DEFAULT_MAX_RETRIES),
    )
    logger.debug(f"Loaded settings: {settings}")
    return settings
