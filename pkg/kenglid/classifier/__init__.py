# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
#  Purpose: LSTM classification head and its training loop.
#   Author: kenglid contributors
#
# -----------------------------------------------------------------------------
"""
kenglid.classifier
==================

An LSTM head with batch normalization and a softmax output, trained with
early stopping on top of frozen word embeddings.

:license:
    CC0 1.0 Universal
    http://creativecommons.org/publicdomain/zero/1.0/
"""

from kenglid.classifier.model import (
    AFTER_NORM,
    BEFORE_NORM,
    LanguageIdentifier,
    ModelSpec,
    build_model,
    count_parameters,
    format_summary,
    summarize,
)
from kenglid.classifier.training import (
    EncodedDataset,
    EpochRecord,
    TrainedModel,
    TrainingConfig,
    TrainingHistory,
    classify,
    encode_corpus,
    predict_batch_proba,
    predict_proba,
    predict_words,
    train,
)
from kenglid.classifier.checkpoint import load_checkpoint, save_checkpoint

__all__ = [
    "AFTER_NORM",
    "BEFORE_NORM",
    "EncodedDataset",
    "EpochRecord",
    "LanguageIdentifier",
    "ModelSpec",
    "TrainedModel",
    "TrainingConfig",
    "TrainingHistory",
    "build_model",
    "classify",
    "count_parameters",
    "encode_corpus",
    "format_summary",
    "load_checkpoint",
    "predict_batch_proba",
    "predict_proba",
    "predict_words",
    "save_checkpoint",
    "summarize",
    "train",
]
