# -*- coding: utf-8 -*-
import logging

import pytest

from kenglid.config import WEIGHTS_CACHE_ENV, RunConfig, resolve_config
from kenglid.errors import ConfigError, MissingFile
from kenglid.util import get_env_var, parse_config, setup_logging


@pytest.fixture(autouse=True)
def no_cache_env(monkeypatch):
    monkeypatch.delenv(WEIGHTS_CACHE_ENV, raising=False)


def test_defaults():
    cfg = resolve_config()
    assert cfg == RunConfig()
    assert cfg.backend == "bert-base-uncased"
    assert cfg.output_dir == "output"
    assert cfg.weights_cache is None

    spec = cfg.model_spec(768)
    assert (spec.input_size, spec.lstm_hidden, spec.dropout_rate) == (768, 128, 0.2)
    assert spec.num_classes == 6
    assert spec.batch_norm

    training = cfg.training_config()
    assert training.optimizer == "adam"
    assert training.learning_rate == pytest.approx(1e-4)
    assert training.batch_size == 64
    assert training.max_epochs == 30


def test_flags_beat_file_beat_defaults(write_file):
    path = write_file(
        "run.yaml", "backend: hash-64\nseed: 5\npatience: 7\nlearning_rate: 0.001\n"
    )
    cfg = resolve_config(path, {"seed": 9, "output_dir": None})

    assert cfg.backend == "hash-64"
    assert cfg.seed == 9
    assert cfg.patience == 7
    assert cfg.learning_rate == pytest.approx(0.001)
    assert cfg.output_dir == "output"


def test_int_accepted_for_float(write_file):
    cfg = resolve_config(write_file("run.yaml", "learning_rate: 1\n"))
    assert isinstance(cfg.learning_rate, float)


def test_weights_cache_from_environment(monkeypatch):
    monkeypatch.setenv(WEIGHTS_CACHE_ENV, "/models/hf")
    assert resolve_config().weights_cache == "/models/hf"
    assert resolve_config(overrides={"weights_cache": "/x"}).weights_cache == "/x"


def test_snapshot_reproduces_config(tmp_path):
    cfg = resolve_config(overrides={"backend": "hash-32", "seed": 4, "patience": 2})
    cfg.save(tmp_path / "run_config.yaml")
    assert resolve_config(tmp_path / "run_config.yaml") == cfg


@pytest.mark.parametrize(
    "text",
    [
        "epochs: 3\n",
        "seed: three\n",
        "batch_norm: 1\n",
        "val_fraction: 1.5\n",
        "batch_size: 0\n",
        "- a list\n",
        "seed: [\n",
    ],
)
def test_bad_config(write_file, text):
    with pytest.raises(ConfigError):
        resolve_config(write_file("run.yaml", text))


def test_unknown_override():
    with pytest.raises(ConfigError):
        resolve_config(overrides={"colour": "blue"})


def test_missing_config(tmp_path):
    with pytest.raises(MissingFile):
        resolve_config(tmp_path / "nope.yaml")


def test_empty_config_file(write_file):
    assert parse_config(write_file("run.yaml", "")) == {}


def test_get_env_var(monkeypatch):
    monkeypatch.setenv("KENGLID_TEST_VAR", "set")
    monkeypatch.delenv("KENGLID_UNSET_VAR", raising=False)
    assert get_env_var("KENGLID_TEST_VAR") == "set"
    assert get_env_var("KENGLID_UNSET_VAR", default="fallback") == "fallback"
    with pytest.raises(ConfigError):
        get_env_var("KENGLID_UNSET_VAR")


def test_setup_logging_without_smtp(monkeypatch):
    monkeypatch.delenv("MAILHOST", raising=False)
    root = setup_logging(level=logging.DEBUG)
    try:
        assert root.level == logging.DEBUG
        assert any(isinstance(h, logging.StreamHandler) for h in root.handlers)
    finally:
        root.handlers = [h for h in root.handlers if type(h) is not logging.StreamHandler]
        root.setLevel(logging.WARNING)
