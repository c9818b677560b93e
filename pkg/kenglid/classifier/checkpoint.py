# -*- coding: utf-8 -*-
"""
Save and restore trained models.

A checkpoint is a single ``torch.save`` file holding a plain dictionary:
format version, tag order, backend identity, model spec, training config and
the head's state dict. It is loaded with ``weights_only=True`` so no pickled
code ever runs.

"""

import logging
import pathlib
import pickle
import zipfile
from dataclasses import asdict

import torch

from kenglid.classifier.model import ModelSpec, build_model
from kenglid.classifier.training import TrainedModel, TrainingConfig
from kenglid.corpus import DEFAULT_SCHEME, TagScheme
from kenglid.errors import CorruptCheckpoint, MissingFile, SchemeMismatch

LOG = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
REQUIRED_KEYS = (
    "format_version",
    "tags",
    "backend",
    "max_subwords",
    "model_spec",
    "training",
    "seed",
    "state_dict",
)


def save_checkpoint(model, path):
    """
    Write a trained model to ``path``.

    Parameters
    ----------
    model : TrainedModel
        Model to save; its attached backend is not saved.
    path : str or pathlib.Path
        Destination, parent directories are created.

    """
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "format_version": CHECKPOINT_VERSION,
        "tags": list(model.scheme.tags),
        "backend": model.backend_name,
        "max_subwords": int(model.max_subwords),
        "model_spec": asdict(model.spec),
        "training": asdict(model.training),
        "seed": int(model.training.seed),
        "state_dict": model.network.state_dict(),
    }
    torch.save(payload, path)
    LOG.info("Saved checkpoint %s", path)


def load_checkpoint(path, scheme=DEFAULT_SCHEME):
    """
    Read a checkpoint written by :func:`save_checkpoint`.

    Parameters
    ----------
    path : str or pathlib.Path
        Checkpoint file.
    scheme : TagScheme or None, optional
        Tag order the caller works with. ``None`` accepts whatever order the
        checkpoint holds.

    Returns
    -------
    TrainedModel
        Model in evaluation mode.

    Raises
    ------
    MissingFile
        path does not exist
    CorruptCheckpoint
        the file cannot be read or lacks required entries
    SchemeMismatch
        the checkpoint's tag order differs from ``scheme``

    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise MissingFile(path)

    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except (
        RuntimeError,
        EOFError,
        OSError,
        ValueError,
        pickle.UnpicklingError,
        zipfile.BadZipFile,
    ) as e:
        raise CorruptCheckpoint("Cannot read checkpoint {}: {}".format(path, e))

    if not isinstance(payload, dict) or any(k not in payload for k in REQUIRED_KEYS):
        raise CorruptCheckpoint("{} is not a kenglid checkpoint".format(path))
    if payload["format_version"] != CHECKPOINT_VERSION:
        raise CorruptCheckpoint(
            "{} has format version {}, expected {}".format(
                path, payload["format_version"], CHECKPOINT_VERSION
            )
        )

    tags = tuple(payload["tags"])
    if scheme is not None and tags != tuple(scheme.tags):
        raise SchemeMismatch(
            "Checkpoint tags {} differ from {}".format(list(tags), list(scheme.tags))
        )

    try:
        spec = ModelSpec(**payload["model_spec"])
        training = TrainingConfig(**payload["training"])
        network = build_model(spec)
        network.load_state_dict(payload["state_dict"])
    except (TypeError, RuntimeError) as e:
        raise CorruptCheckpoint("Cannot restore model from {}: {}".format(path, e))

    if spec.num_classes != len(tags):
        raise CorruptCheckpoint(
            "{} has {} tags but {} outputs".format(path, len(tags), spec.num_classes)
        )

    network.eval()
    LOG.info("Loaded checkpoint %s (backend %s)", path, payload["backend"])
    return TrainedModel(
        network=network,
        scheme=TagScheme(tags),
        backend_name=payload["backend"],
        max_subwords=int(payload["max_subwords"]),
        training=training,
    )
