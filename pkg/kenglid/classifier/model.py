# -*- coding: utf-8 -*-
"""
The classification head: an LSTM over the subword vectors of one word,
followed by batch normalization, dropout and a dense softmax layer.

"""

import logging
from dataclasses import dataclass

import torch
import torch.nn as nn

from kenglid.corpus import CANONICAL_TAGS
from kenglid.errors import InvalidSpec

LOG = logging.getLogger(__name__)

AFTER_NORM = "after_norm"
BEFORE_NORM = "before_norm"
DEFAULT_LSTM_HIDDEN = 128
DEFAULT_DROPOUT = 0.2


@dataclass(frozen=True)
class ModelSpec:
    """
    Topology of the classification head.

    ``input_size`` must equal the embedding backend's hidden size and
    ``num_classes`` the size of the tag scheme.
    """

    input_size: int
    lstm_hidden: int = DEFAULT_LSTM_HIDDEN
    dropout_rate: float = DEFAULT_DROPOUT
    num_classes: int = len(CANONICAL_TAGS)
    batch_norm: bool = True
    dropout_position: str = AFTER_NORM

    def validate(self):
        """
        Raises
        ------
        InvalidSpec
            a field is out of range
        """
        if int(self.input_size) < 1:
            raise InvalidSpec("input_size must be positive")
        if int(self.lstm_hidden) < 1:
            raise InvalidSpec("lstm_hidden must be positive")
        if int(self.num_classes) < 2:
            raise InvalidSpec("num_classes must be at least 2")
        if not 0.0 <= float(self.dropout_rate) < 1.0:
            raise InvalidSpec("dropout_rate must lie in [0, 1)")
        if self.dropout_position not in (AFTER_NORM, BEFORE_NORM):
            raise InvalidSpec(
                "dropout_position must be {} or {}".format(AFTER_NORM, BEFORE_NORM)
            )


class LanguageIdentifier(nn.Module):
    """
    LSTM -> batch norm -> dropout -> dense -> softmax.

    :meth:`forward` returns logits so training can use a numerically stable
    cross-entropy; :meth:`predict_proba` applies the softmax.

    Parameters
    ----------
    spec : ModelSpec
        Validated head topology.

    """

    def __init__(self, spec):
        super().__init__()
        self.spec = spec
        self.lstm = nn.LSTM(spec.input_size, spec.lstm_hidden, batch_first=True)
        if spec.batch_norm:
            self.norm = nn.BatchNorm1d(spec.lstm_hidden)
        else:
            self.norm = None
        self.dropout = nn.Dropout(spec.dropout_rate)
        self.output = nn.Linear(spec.lstm_hidden, spec.num_classes)

    def forward(self, vectors, lengths):
        """
        Parameters
        ----------
        vectors : torch.Tensor
            (batch, pieces, input_size) padded subword vectors.
        lengths : torch.Tensor
            (batch,) number of real pieces per row, each at least 1.

        Returns
        -------
        torch.Tensor
            (batch, num_classes) logits.
        """
        packed = nn.utils.rnn.pack_padded_sequence(
            vectors, lengths.cpu(), batch_first=True, enforce_sorted=False
        )
        _, (h_n, _) = self.lstm(packed)
        features = h_n[-1]

        if self.spec.dropout_position == BEFORE_NORM:
            features = self.dropout(features)
        if self.norm is not None:
            features = self.norm(features)
        if self.spec.dropout_position == AFTER_NORM:
            features = self.dropout(features)
        return self.output(features)

    def predict_proba(self, vectors, lengths):
        """Softmax over :meth:`forward`, computed in float64."""
        return torch.softmax(self.forward(vectors, lengths).double(), dim=-1)


def build_model(spec, seed=None):
    """
    Build an untrained head.

    Parameters
    ----------
    spec : ModelSpec
        Head topology.
    seed : int, optional
        Seeds torch before the weights are initialized.

    Returns
    -------
    LanguageIdentifier

    Raises
    ------
    InvalidSpec
        spec is out of range

    """
    spec.validate()
    if seed is not None:
        torch.manual_seed(seed)
    model = LanguageIdentifier(spec)
    LOG.info("Built model with %d parameters", count_parameters(model))
    LOG.debug("Model summary:\n%s", format_summary(model))
    return model


def count_parameters(model):
    return sum(p.numel() for p in model.parameters())


def summarize(model):
    """
    Layer table of a model.

    Returns
    -------
    list of (str, str, int)
        (name, layer type, parameter count) per top-level layer.
    """
    return [
        (name, type(layer).__name__, count_parameters(layer))
        for name, layer in model.named_children()
    ]


def format_summary(model):
    rows = summarize(model)
    lines = ["{:<10} {:<12} {:>10}".format("layer", "type", "params")]
    for name, kind, params in rows:
        lines.append("{:<10} {:<12} {:>10d}".format(name, kind, params))
    lines.append("{:<10} {:<12} {:>10d}".format("total", "", count_parameters(model)))
    return "\n".join(lines)
