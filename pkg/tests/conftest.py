"""Shared fixtures: named matrices, fields and the bundled corpus."""

import logging
from pathlib import Path

import pytest

from evoalg.config import BUNDLED_CORPUS, DEFAULT_PRIME
from evoalg.corpus import load_corpus, read_matrix
from evoalg.fieldcore import FieldSpec
from evoalg.pattern import SupportPattern

DATA_DIR = Path(__file__).resolve().parent / "data"

TWO_MAXIMAL_IDEALS = "0 * * 0/* 0 * */0 0 * 0/0 0 0 *"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def gf() -> FieldSpec:
    return FieldSpec.prime(DEFAULT_PRIME)


@pytest.fixture
def relabel_pair():
    return read_matrix(DATA_DIR / "relabel_source.mat"), read_matrix(DATA_DIR / "relabel_target.mat")


@pytest.fixture
def two_maximal_ideals() -> SupportPattern:
    return SupportPattern.from_text(TWO_MAXIMAL_IDEALS)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(BUNDLED_CORPUS)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch):
    for name in ("EVOALG_CORPUS", "EVOALG_PRIME", "EVOALG_SEED", "EVOALG_LOG_LEVEL", "EVOALG_MAX_RETRIES"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(autouse=True)
def restore_root_logging():
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield
    root.setLevel(level)
    root.handlers[:] = handlers
