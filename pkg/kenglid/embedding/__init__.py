# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
#  Purpose: Word embedding backends.
#   Author: kenglid contributors
#
# -----------------------------------------------------------------------------
"""
kenglid.embedding
=================

Pretrained transformer and trigram hash embeddings for single words.

:license:
    CC0 1.0 Universal
    http://creativecommons.org/publicdomain/zero/1.0/
"""

from kenglid.embedding.embedding import (
    DEFAULT_HASH_SIZE,
    DEFAULT_MAX_SUBWORDS,
    HASH,
    PRETRAINED,
    REGISTRY,
    EmbeddedBatch,
    EmbeddingBackend,
    EmbeddingBackendConfig,
    HashBackend,
    TransformerBackend,
    WordEmbedding,
    get_backend_config,
    hash_config,
    list_backends,
    load_backend,
)


def embed_word(backend, word):
    """Embed one word with ``backend``."""
    return backend.embed_word(word)


def embed_batch(backend, words, max_subwords=DEFAULT_MAX_SUBWORDS):
    """Embed several words with ``backend`` into a padded batch."""
    return backend.embed_batch(words, max_subwords=max_subwords)


__all__ = [
    "DEFAULT_HASH_SIZE",
    "DEFAULT_MAX_SUBWORDS",
    "HASH",
    "PRETRAINED",
    "REGISTRY",
    "EmbeddedBatch",
    "EmbeddingBackend",
    "EmbeddingBackendConfig",
    "HashBackend",
    "TransformerBackend",
    "WordEmbedding",
    "embed_batch",
    "embed_word",
    "get_backend_config",
    "hash_config",
    "list_backends",
    "load_backend",
]
