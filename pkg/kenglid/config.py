# -*- coding: utf-8 -*-
"""
Run configuration.

A run is described by a flat YAML mapping. Every key is optional; what the
file leaves out falls back to the defaults below, and command line flags
override the file. The resolved mapping is written next to the run's
outputs and can be passed back with ``--config`` to repeat the run.

Example file::

    train_file: data/kn_en_train.tsv
    test_file: data/kn_en_test.tsv
    output_dir: runs/bert
    backend: bert-base-uncased
    seed: 13
    patience: 3

"""

import logging
from dataclasses import asdict, dataclass, fields, replace

from kenglid.classifier import AFTER_NORM, ModelSpec, TrainingConfig
from kenglid.classifier.model import DEFAULT_DROPOUT, DEFAULT_LSTM_HIDDEN
from kenglid.classifier.training import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_LEARNING_RATE,
    DEFAULT_MAX_EPOCHS,
    DEFAULT_PATIENCE,
)
from kenglid.corpus import CANONICAL_TAGS, DEFAULT_VAL_FRACTION
from kenglid.embedding import DEFAULT_MAX_SUBWORDS
from kenglid.errors import ConfigError
from kenglid.util import get_env_var, parse_config, write_yaml

LOG = logging.getLogger(__name__)

WEIGHTS_CACHE_ENV = "KENGLID_WEIGHTS_CACHE"
SNAPSHOT_NAME = "run_config.yaml"


@dataclass(frozen=True)
class RunConfig:
    train_file: str = None
    test_file: str = None
    output_dir: str = "output"
    weights_cache: str = None
    backend: str = "bert-base-uncased"
    seed: int = 0
    val_fraction: float = DEFAULT_VAL_FRACTION
    stratified: bool = True
    max_subwords: int = DEFAULT_MAX_SUBWORDS
    lstm_hidden: int = DEFAULT_LSTM_HIDDEN
    dropout_rate: float = DEFAULT_DROPOUT
    batch_norm: bool = True
    dropout_position: str = AFTER_NORM
    learning_rate: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE
    max_epochs: int = DEFAULT_MAX_EPOCHS
    patience: int = DEFAULT_PATIENCE

    def model_spec(self, input_size):
        return ModelSpec(
            input_size=input_size,
            lstm_hidden=self.lstm_hidden,
            dropout_rate=self.dropout_rate,
            num_classes=len(CANONICAL_TAGS),
            batch_norm=self.batch_norm,
            dropout_position=self.dropout_position,
        )

    def training_config(self):
        return TrainingConfig(
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            max_epochs=self.max_epochs,
            early_stopping_patience=self.patience,
            seed=self.seed,
        )

    def to_dict(self):
        return asdict(self)

    def save(self, path):
        write_yaml(self.to_dict(), path)


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key, value):
    if value is None:
        return None
    kind = _TYPES[key]
    if kind is bool:
        if isinstance(value, bool):
            return value
    elif kind is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif kind is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif isinstance(value, (str, int, float)) and not isinstance(value, bool):
        return str(value)
    raise ConfigError("{} has the wrong type: {!r}".format(key, value))


def _check_keys(values, source):
    unknown = sorted(set(values) - set(_TYPES))
    if unknown:
        raise ConfigError("Unknown key(s) in {}: {}".format(source, ", ".join(unknown)))


def resolve_config(config_path=None, overrides=None):
    """
    Combine defaults, a config file and command line overrides.

    Parameters
    ----------
    config_path : str, optional
        Flat YAML config file.
    overrides : dict, optional
        Values from the command line; ``None`` values are ignored.

    Returns
    -------
    RunConfig

    Raises
    ------
    MissingFile
        config_path does not exist
    ConfigError
        unknown keys or badly typed values

    """
    values = {}
    if config_path is not None:
        from_file = parse_config(config_path)
        _check_keys(from_file, config_path)
        values.update({k: _coerce(k, v) for k, v in from_file.items()})

    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    _check_keys(overrides, "command line")
    values.update({k: _coerce(k, v) for k, v in overrides.items()})

    cfg = replace(RunConfig(), **values)
    if cfg.weights_cache is None:
        cache = get_env_var(WEIGHTS_CACHE_ENV, default="")
        cfg = replace(cfg, weights_cache=cache or None)

    if not 0.0 < cfg.val_fraction < 1.0:
        raise ConfigError("val_fraction must lie in (0, 1)")
    for key in ("max_subwords", "batch_size", "max_epochs", "patience", "lstm_hidden"):
        if getattr(cfg, key) < 1:
            raise ConfigError("{} must be positive".format(key))

    LOG.debug("Resolved config: %s", cfg)
    return cfg
