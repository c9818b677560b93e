# -*- coding: utf-8 -*-
"""
Encode corpora, train the head with early stopping, and predict tags.

Training follows the usual recipe for this task: Adam, mini-batches of 64,
categorical cross-entropy against one-hot targets, at most 30 epochs, and
early stopping on validation loss that restores the best epoch's weights.

"""

import copy
import logging
import math
import random
from dataclasses import asdict, dataclass, field

import numpy as np
import ruamel.yaml
import torch
import torch.nn as nn

from kenglid.corpus import DEFAULT_SCHEME
from kenglid.embedding import DEFAULT_MAX_SUBWORDS, load_backend
from kenglid.errors import (
    BackendMismatch,
    EmbeddingError,
    EmptyDataset,
    InvalidSpec,
    MalformedHistory,
    NonFiniteLoss,
)
from kenglid.util import read_yaml, write_yaml

LOG = logging.getLogger(__name__)

DEFAULT_LEARNING_RATE = 1e-4
DEFAULT_BATCH_SIZE = 64
DEFAULT_MAX_EPOCHS = 30
DEFAULT_PATIENCE = 3
ENCODE_CHUNK = 1024
FALLBACK_TAG = "other"


@dataclass(frozen=True)
class TrainingConfig:
    optimizer: str = "adam"
    learning_rate: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE
    max_epochs: int = DEFAULT_MAX_EPOCHS
    early_stopping_patience: int = DEFAULT_PATIENCE
    seed: int = 0

    def validate(self):
        if self.optimizer.lower() != "adam":
            raise InvalidSpec("Only the adam optimizer is supported")
        if not self.learning_rate > 0:
            raise InvalidSpec("learning_rate must be positive")
        for attr in ("batch_size", "max_epochs", "early_stopping_patience"):
            if int(getattr(self, attr)) < 1:
                raise InvalidSpec("{} must be positive".format(attr))


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float
    train_accuracy: float
    val_accuracy: float


@dataclass
class TrainingHistory:
    """
    One record per completed epoch.

    ``best_epoch`` is the epoch with the lowest validation loss (the first
    one on ties) and ``stopped_epoch`` the last epoch that ran.
    """

    records: list = field(default_factory=list)
    stopped_epoch: int = 0
    best_epoch: int = 0

    def __len__(self):
        return len(self.records)

    def record(self, epoch):
        return self.records[epoch - 1]

    def series(self, name):
        return [getattr(r, name) for r in self.records]

    def to_dict(self):
        return {
            "best_epoch": self.best_epoch,
            "stopped_epoch": self.stopped_epoch,
            "epochs": [asdict(r) for r in self.records],
        }

    @classmethod
    def from_dict(cls, data):
        """
        Raises
        ------
        MalformedHistory
            data does not look like :meth:`to_dict` output
        """
        try:
            records = [
                EpochRecord(
                    epoch=int(r["epoch"]),
                    train_loss=float(r["train_loss"]),
                    val_loss=float(r["val_loss"]),
                    train_accuracy=float(r["train_accuracy"]),
                    val_accuracy=float(r["val_accuracy"]),
                )
                for r in data["epochs"]
            ]
            history = cls(
                records=records,
                stopped_epoch=int(data["stopped_epoch"]),
                best_epoch=int(data["best_epoch"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedHistory("Not a training history: {}".format(e))

        if not records:
            raise MalformedHistory("Training history has no epochs")
        if [r.epoch for r in records] != list(range(1, len(records) + 1)):
            raise MalformedHistory("Epochs must be numbered 1..n without gaps")
        return history

    def save(self, path):
        write_yaml(self.to_dict(), path)

    @classmethod
    def load(cls, path):
        """
        Raises
        ------
        MissingFile
            path does not exist
        MalformedHistory
            the file is not a training history
        """
        try:
            data = read_yaml(path)
        except ruamel.yaml.YAMLError as e:
            raise MalformedHistory("Cannot parse {}: {}".format(path, e))
        if not isinstance(data, dict):
            raise MalformedHistory("{} is not a mapping".format(path))
        return cls.from_dict(data)


@dataclass(frozen=True, eq=False)
class EncodedDataset:
    """
    Embedded corpus ready for training.

    Each distinct word is embedded once: ``vectors[index[i]]`` and
    ``lengths[index[i]]`` belong to item ``i`` and ``targets[i]`` is its
    one-hot tag.
    """

    words: tuple
    backend: str
    vectors: np.ndarray
    lengths: np.ndarray
    index: np.ndarray
    targets: np.ndarray
    scheme: object = DEFAULT_SCHEME

    def __len__(self):
        return len(self.index)

    @property
    def labels(self):
        return self.targets.argmax(axis=1)

    @property
    def max_subwords(self):
        return self.vectors.shape[1]

    def tensors(self, rows):
        """(vectors, lengths, labels) tensors for the given item rows."""
        rows = np.asarray(rows)
        slots = self.index[rows]
        return (
            torch.from_numpy(self.vectors[slots]),
            torch.from_numpy(self.lengths[slots]),
            torch.from_numpy(self.labels[rows].astype(np.int64)),
        )


def encode_corpus(corpus, backend, max_subwords=DEFAULT_MAX_SUBWORDS):
    """
    Embed a labeled corpus.

    Parameters
    ----------
    corpus : kenglid.corpus.LabeledCorpus
        Words and tags.
    backend : kenglid.embedding.EmbeddingBackend
        Embedding backend.
    max_subwords : int, optional
        Pieces kept per word.

    Returns
    -------
    EncodedDataset

    Raises
    ------
    EmptyDataset
        corpus is empty

    """
    if len(corpus) == 0:
        raise EmptyDataset("Cannot encode an empty corpus")

    slots = {}
    for word in corpus.words:
        slots.setdefault(word, len(slots))
    distinct = list(slots)

    vectors = []
    lengths = []
    truncated = 0
    for start in range(0, len(distinct), ENCODE_CHUNK):
        batch = backend.embed_batch(
            distinct[start : start + ENCODE_CHUNK], max_subwords=max_subwords
        )
        vectors.append(batch.vectors)
        lengths.append(batch.lengths)
        truncated += batch.truncated
        LOG.debug("Embedded %d/%d distinct words", start + len(batch), len(distinct))

    LOG.info(
        "Encoded %d tokens (%d distinct words, %d truncated) with %s",
        len(corpus),
        len(distinct),
        truncated,
        backend.name,
    )
    return EncodedDataset(
        words=tuple(corpus.words),
        backend=backend.name,
        vectors=np.concatenate(vectors),
        lengths=np.concatenate(lengths),
        index=np.array([slots[w] for w in corpus.words], dtype=np.int64),
        targets=corpus.scheme.encode_many(corpus.tags),
        scheme=corpus.scheme,
    )


def _check_dataset(data, name, num_classes):
    if len(data) == 0:
        raise EmptyDataset("The {} dataset is empty".format(name))
    targets = np.asarray(data.targets)
    if (
        targets.ndim != 2
        or targets.shape[1] != num_classes
        or not np.isin(targets, (0, 1)).all()
        or not (targets.sum(axis=1) == 1).all()
    ):
        raise ValueError("The {} targets are not valid one-hot rows".format(name))


def _batches(size, batch_size, generator, allow_singleton):
    order = torch.randperm(size, generator=generator).numpy()
    batches = [order[i : i + batch_size] for i in range(0, size, batch_size)]
    # batch norm cannot normalize a single training row
    if not allow_singleton and len(batches) > 1 and len(batches[-1]) == 1:
        batches[-2] = np.concatenate([batches[-2], batches.pop()])
    return batches


def _run_validation(model, data, loss_fn, batch_size):
    """Mean loss and accuracy of ``model`` on ``data`` in evaluation mode."""
    model.eval()
    total_loss = 0.0
    correct = 0
    with torch.no_grad():
        for start in range(0, len(data), batch_size):
            rows = np.arange(start, min(start + batch_size, len(data)))
            vectors, lengths, labels = data.tensors(rows)
            logits = model(vectors, lengths)
            total_loss += loss_fn(logits, labels).item() * len(rows)
            correct += (logits.argmax(dim=1) == labels).sum().item()
    return total_loss / len(data), correct / len(data)


def _seed_everything(seed):
    random.seed(seed)
    np.random.seed(seed % (2 ** 32))
    torch.manual_seed(seed)


def train(model, train_data, val_data, cfg):
    """
    Train a head with early stopping on validation loss.

    Parameters
    ----------
    model : LanguageIdentifier
        Head from :func:`kenglid.classifier.build_model`; trained in place.
    train_data, val_data : EncodedDataset
        Disjoint encoded datasets from the same backend.
    cfg : TrainingConfig
        Optimizer settings and stopping rule.

    Returns
    -------
    (TrainedModel, TrainingHistory)
        The model carries the weights of the best epoch.

    Raises
    ------
    EmptyDataset
        either dataset is empty
    BackendMismatch
        the datasets were embedded by different backends
    InvalidSpec
        the embeddings do not fit the model, or batch normalization is on
        with a batch size below 2
    NonFiniteLoss
        a training or validation loss is NaN or infinite

    """
    cfg.validate()
    spec = model.spec
    _check_dataset(train_data, "training", spec.num_classes)
    _check_dataset(val_data, "validation", spec.num_classes)
    if train_data.backend != val_data.backend:
        raise BackendMismatch(
            "Training data from {} but validation data from {}".format(
                train_data.backend, val_data.backend
            )
        )
    if train_data.vectors.shape[2] != spec.input_size:
        raise InvalidSpec(
            "Model expects {} inputs, embeddings have {}".format(
                spec.input_size, train_data.vectors.shape[2]
            )
        )
    if spec.batch_norm and len(train_data) < 2:
        raise EmptyDataset("Batch normalization needs at least 2 training items")
    if spec.batch_norm and cfg.batch_size < 2:
        raise InvalidSpec(
            "Batch normalization needs a batch size of at least 2, got {}".format(
                cfg.batch_size
            )
        )

    _seed_everything(cfg.seed)
    generator = torch.Generator().manual_seed(cfg.seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    loss_fn = nn.CrossEntropyLoss()

    history = TrainingHistory()
    best_loss = math.inf
    best_state = copy.deepcopy(model.state_dict())
    stale = 0

    for epoch in range(1, cfg.max_epochs + 1):
        model.train()
        total_loss = 0.0
        correct = 0
        for rows in _batches(
            len(train_data), cfg.batch_size, generator, not spec.batch_norm
        ):
            vectors, lengths, labels = train_data.tensors(rows)
            optimizer.zero_grad()
            logits = model(vectors, lengths)
            loss = loss_fn(logits, labels)
            if not torch.isfinite(loss):
                raise NonFiniteLoss(epoch, loss.item())
            loss.backward()
            optimizer.step()
            total_loss += loss.item() * len(rows)
            correct += (logits.argmax(dim=1) == labels).sum().item()

        val_loss, val_accuracy = _run_validation(
            model, val_data, loss_fn, cfg.batch_size
        )
        if not math.isfinite(val_loss):
            raise NonFiniteLoss(epoch, val_loss)

        record = EpochRecord(
            epoch=epoch,
            train_loss=total_loss / len(train_data),
            val_loss=val_loss,
            train_accuracy=correct / len(train_data),
            val_accuracy=val_accuracy,
        )
        history.records.append(record)
        history.stopped_epoch = epoch
        LOG.info(
            "Epoch %02d/%02d | train loss %.4f acc %.3f || val loss %.4f acc %.3f",
            epoch,
            cfg.max_epochs,
            record.train_loss,
            record.train_accuracy,
            record.val_loss,
            record.val_accuracy,
        )

        if val_loss < best_loss:
            best_loss = val_loss
            best_state = copy.deepcopy(model.state_dict())
            history.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale >= cfg.early_stopping_patience:
                LOG.info(
                    "Validation loss has not improved for %d epochs, stopping",
                    stale,
                )
                break

    model.load_state_dict(best_state)
    model.eval()
    LOG.info(
        "Restored weights of epoch %d (val loss %.4f)", history.best_epoch, best_loss
    )
    trained = TrainedModel(
        network=model,
        scheme=train_data.scheme,
        backend_name=train_data.backend,
        max_subwords=train_data.max_subwords,
        training=cfg,
    )
    return trained, history


@dataclass(eq=False)
class TrainedModel:
    """
    A trained head together with everything needed to use it.

    ``backend`` is attached lazily by :meth:`embedder` and is never saved.
    """

    network: nn.Module
    scheme: object
    backend_name: str
    max_subwords: int
    training: TrainingConfig
    backend: object = None

    @property
    def spec(self):
        return self.network.spec

    def embedder(self, weights_cache=None):
        if self.backend is None:
            self.backend = load_backend(self.backend_name, weights_cache=weights_cache)
        if self.backend.name != self.backend_name:
            raise BackendMismatch(
                "Model was trained on {}, backend is {}".format(
                    self.backend_name, self.backend.name
                )
            )
        return self.backend


def _pad(vectors, max_subwords):
    n = min(len(vectors), max_subwords)
    out = np.zeros((1, max_subwords, vectors.shape[1]), dtype=np.float32)
    out[0, :n] = vectors[:n]
    return torch.from_numpy(out), torch.tensor([n], dtype=torch.long)


def predict_proba(model, embedding):
    """
    Tag probabilities of one embedded word.

    Parameters
    ----------
    model : TrainedModel
        Trained model.
    embedding : kenglid.embedding.WordEmbedding
        Embedding from the backend the model was trained on.

    Returns
    -------
    numpy.ndarray
        float64 vector of length ``len(model.scheme)`` summing to 1.

    Raises
    ------
    BackendMismatch
        embedding comes from another backend

    """
    if embedding.backend != model.backend_name:
        raise BackendMismatch(
            "Model was trained on {}, embedding is from {}".format(
                model.backend_name, embedding.backend
            )
        )
    vectors, lengths = _pad(np.asarray(embedding.vectors), model.max_subwords)
    model.network.eval()
    with torch.no_grad():
        return model.network.predict_proba(vectors, lengths)[0].numpy()


def predict_batch_proba(model, batch):
    """Tag probabilities of an :class:`~kenglid.embedding.EmbeddedBatch`."""
    if batch.backend != model.backend_name:
        raise BackendMismatch(
            "Model was trained on {}, batch is from {}".format(
                model.backend_name, batch.backend
            )
        )
    model.network.eval()
    with torch.no_grad():
        return model.network.predict_proba(
            torch.from_numpy(batch.vectors), torch.from_numpy(batch.lengths)
        ).numpy()


def classify(model, word, backend=None):
    """
    Most probable tag of a word.

    Ties go to the lowest scheme index.

    Parameters
    ----------
    model : TrainedModel
        Trained model.
    word : str
        Word to tag.
    backend : kenglid.embedding.EmbeddingBackend, optional
        Defaults to the model's own backend.

    Returns
    -------
    str
        Tag name.

    """
    if backend is None:
        backend = model.embedder()
    return model.scheme.decode(predict_proba(model, backend.embed_word(word)))


def predict_words(model, words, backend=None, batch_size=256):
    """
    Tag a list of words.

    Words the backend refuses are tagged ``other`` instead of failing the
    whole run.

    Returns
    -------
    (list of str, int)
        Tags in input order and the number of fallback tags.

    """
    if backend is None:
        backend = model.embedder()
    fallback = FALLBACK_TAG if FALLBACK_TAG in model.scheme else model.scheme.tags[-1]

    tags = []
    fallbacks = 0
    for start in range(0, len(words), batch_size):
        chunk = list(words[start : start + batch_size])
        try:
            probs = predict_batch_proba(
                model, backend.embed_batch(chunk, max_subwords=model.max_subwords)
            )
            tags.extend(model.scheme.decode(p) for p in probs)
            continue
        except EmbeddingError:
            pass

        for word in chunk:
            try:
                probs = predict_proba(model, backend.embed_word(word))
                tags.append(model.scheme.decode(probs))
            except EmbeddingError as e:
                LOG.debug("Tagging %r as %s: %s", word, fallback, e)
                tags.append(fallback)
                fallbacks += 1

    if fallbacks:
        LOG.warning("%d word(s) could not be embedded and were tagged %s",
                    fallbacks, fallback)
    return tags, fallbacks
