# -*- coding: utf-8 -*-
"""
Turn single words into sequences of subword vectors.

Two kinds of backend live here. Pretrained transformers are loaded with the
Hugging Face ``transformers`` library and stay frozen; every word is run
through the encoder on its own and the hidden states of its subword pieces
are kept. The hash backend needs no weights: a word is cut into character
trigrams and every trigram picks a fixed pseudo-random vector, which makes
the whole pipeline usable offline and bit-for-bit reproducible.

"""

import hashlib
import logging
import re
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from kenglid.errors import EmptyBatch, EmptyWord, UnknownBackend, WeightsUnavailable

LOG = logging.getLogger(__name__)

PRETRAINED = "pretrained-transformer"
HASH = "deterministic-hash"
KINDS = (PRETRAINED, HASH)
UNCASED = "uncased"
CASED = "cased"

DEFAULT_MAX_SUBWORDS = 16
DEFAULT_HASH_SIZE = 64
HASH_BUCKETS = 2 ** 20
TRANSFORMER_CHUNK = 64
# tokenizers without a length limit report a huge model_max_length
MAX_POSITIONS_SENTINEL = 100000

_HASH_NAME = re.compile(r"^hash-(\d+)$")


@dataclass(frozen=True)
class EmbeddingBackendConfig:
    """
    Identity and shape of an embedding backend.

    ``model_id`` is the Hugging Face hub id for pretrained backends and
    ``None`` for the hash backend.
    """

    name: str
    kind: str
    hidden_size: int
    transformer_blocks: int
    attention_heads: int
    parameter_count: int
    casing: str
    model_id: str = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("Unknown backend kind {!r}".format(self.kind))
        if self.casing not in (UNCASED, CASED):
            raise ValueError("Unknown casing {!r}".format(self.casing))
        for attr in ("hidden_size", "transformer_blocks", "attention_heads"):
            if int(getattr(self, attr)) < 1:
                raise ValueError("{} must be positive".format(attr))


def hash_config(hidden_size=DEFAULT_HASH_SIZE):
    """Config of the trigram hash backend with the given vector size."""
    return EmbeddingBackendConfig(
        name="hash-{}".format(hidden_size),
        kind=HASH,
        hidden_size=int(hidden_size),
        transformer_blocks=1,
        attention_heads=1,
        parameter_count=0,
        casing=UNCASED,
    )


REGISTRY = {
    c.name: c
    for c in (
        EmbeddingBackendConfig(
            "bert-base-uncased", PRETRAINED, 768, 12, 12, 110000000, UNCASED,
            "bert-base-uncased",
        ),
        EmbeddingBackendConfig(
            "bert-base-multilingual-uncased", PRETRAINED, 768, 12, 12, 110000000,
            UNCASED, "bert-base-multilingual-uncased",
        ),
        EmbeddingBackendConfig(
            "xlm-roberta-large", PRETRAINED, 1024, 24, 16, 355000000, CASED,
            "xlm-roberta-large",
        ),
        EmbeddingBackendConfig(
            "roberta-base", PRETRAINED, 768, 12, 12, 110000000, CASED,
            "roberta-base",
        ),
        hash_config(DEFAULT_HASH_SIZE),
    )
}


def get_backend_config(name):
    """
    Look up a backend by name.

    Besides the registry, any ``hash-N`` name resolves to a hash backend of
    size N.

    Raises
    ------
    UnknownBackend
        name is neither registered nor a hash-N name
    """
    if name in REGISTRY:
        return REGISTRY[name]
    match = _HASH_NAME.match(str(name))
    if match and int(match.group(1)) > 0:
        return hash_config(int(match.group(1)))
    raise UnknownBackend(name)


def list_backends():
    """Registered backend configs, in registry order."""
    return list(REGISTRY.values())


@dataclass(frozen=True, eq=False)
class WordEmbedding:
    """Subword vectors of one word, shape (pieces, hidden_size)."""

    word: str
    backend: str
    vectors: np.ndarray

    @property
    def pooled(self):
        return self.vectors.mean(axis=0)


@dataclass(frozen=True, eq=False)
class EmbeddedBatch:
    """
    Padded subword vectors of several words.

    ``vectors`` has shape (batch, max_subwords, hidden_size), ``mask`` marks
    real positions with 1 and ``truncated`` counts words that lost pieces.
    """

    words: tuple
    backend: str
    vectors: np.ndarray
    mask: np.ndarray
    lengths: np.ndarray
    truncated: int

    def __len__(self):
        return len(self.words)

    def row(self, i):
        return WordEmbedding(
            self.words[i], self.backend, self.vectors[i, : self.lengths[i]]
        )


class EmbeddingBackend(object):
    """
    Base class of all backends.

    Subclasses provide :meth:`tokenize` and :meth:`_encode`; everything else
    is shared. Backends hold no mutable state after construction.

    Parameters
    ----------
    config : EmbeddingBackendConfig
        Identity and shape of the backend.

    """

    #: longest piece list the encoder accepts, None for no limit
    max_pieces = None

    def __init__(self, config):
        self.config = config

    @property
    def name(self):
        return self.config.name

    @property
    def hidden_size(self):
        return self.config.hidden_size

    def normalize(self, word):
        """
        Apply the backend casing rule.

        Raises
        ------
        EmptyWord
            nothing is left of the word
        """
        word = str(word).strip()
        if self.config.casing == UNCASED:
            word = word.lower()
        if not word:
            raise EmptyWord("Cannot embed an empty word")
        return word

    def tokenize(self, word):
        raise NotImplementedError

    def _fit(self, pieces):
        if self.max_pieces is not None and len(pieces) > self.max_pieces:
            return pieces[: self.max_pieces], True
        return pieces, False

    def _encode(self, piece_lists):
        """Return one (pieces, hidden_size) float32 array per piece list."""
        raise NotImplementedError

    def embed_word(self, word):
        """
        Embed one word.

        Parameters
        ----------
        word : str
            A single word.

        Returns
        -------
        WordEmbedding
            One vector per subword piece.

        """
        pieces, cut = self._fit(self.tokenize(self.normalize(word)))
        if cut:
            LOG.warning("%r has more than %d pieces and was truncated",
                        word, self.max_pieces)
        vectors = self._encode([pieces])[0]
        return WordEmbedding(word, self.name, vectors)

    def embed_batch(self, words, max_subwords=DEFAULT_MAX_SUBWORDS):
        """
        Embed several words into one padded array.

        Parameters
        ----------
        words : sequence of str
            Words to embed.
        max_subwords : int
            Rows are cut or zero-padded to this many pieces.

        Returns
        -------
        EmbeddedBatch

        Raises
        ------
        EmptyBatch
            words is empty
        EmptyWord
            one of the words is empty

        """
        words = tuple(words)
        if not words:
            raise EmptyBatch("Cannot embed an empty batch")
        if max_subwords < 1:
            raise ValueError("max_subwords must be positive")

        fitted = [self._fit(self.tokenize(self.normalize(w))) for w in words]
        encoded = self._encode([pieces for pieces, _ in fitted])

        vectors = np.zeros(
            (len(words), max_subwords, self.hidden_size), dtype=np.float32
        )
        mask = np.zeros((len(words), max_subwords), dtype=np.uint8)
        lengths = np.zeros(len(words), dtype=np.int64)
        truncated = 0
        for i, arr in enumerate(encoded):
            n = min(len(arr), max_subwords)
            if len(arr) > max_subwords or fitted[i][1]:
                truncated += 1
            vectors[i, :n] = arr[:n]
            mask[i, :n] = 1
            lengths[i] = n

        if truncated:
            LOG.warning(
                "%d of %d words exceeded %d subwords and were truncated",
                truncated,
                len(words),
                max_subwords,
            )
        return EmbeddedBatch(words, self.name, vectors, mask, lengths, truncated)


class HashBackend(EmbeddingBackend):
    """
    Character trigram hashing backend.

    The word is padded with ``<`` and ``>``, cut into overlapping trigrams,
    and each trigram is hashed into one of ``HASH_BUCKETS`` buckets. The
    bucket number seeds the generator of that bucket's vector, so embeddings
    are a pure function of (word, hidden_size).

    Examples
    --------
    >>> backend = HashBackend(hash_config(8))
    >>> backend.tokenize("ninna")
    ['<ni', 'nin', 'inn', 'nna', 'na>']

    """

    def tokenize(self, word):
        padded = "<{}>".format(word)
        return [padded[i : i + 3] for i in range(len(padded) - 2)]

    def _encode(self, piece_lists):
        return [
            np.stack([_trigram_vector(p, self.hidden_size) for p in pieces])
            for pieces in piece_lists
        ]


def _bucket(piece):
    digest = hashlib.sha256(piece.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") % HASH_BUCKETS


@lru_cache(maxsize=65536)
def _bucket_vector(bucket, hidden_size):
    rng = np.random.default_rng([bucket, hidden_size])
    vec = rng.standard_normal(hidden_size).astype(np.float32)
    vec.setflags(write=False)
    return vec


def _trigram_vector(piece, hidden_size):
    return _bucket_vector(_bucket(piece), hidden_size)


class TransformerBackend(EmbeddingBackend):
    """
    Frozen pretrained transformer encoder.

    Parameters
    ----------
    config : EmbeddingBackendConfig
        A pretrained-transformer config.
    weights_cache : str, optional
        Directory for downloaded weights, passed to ``from_pretrained``.
    device : str, optional
        Torch device to run the encoder on.

    Raises
    ------
    WeightsUnavailable
        transformers is missing or the weights cannot be loaded

    """

    def __init__(self, config, weights_cache=None, device="cpu"):
        super().__init__(config)
        try:
            import torch
            from transformers import AutoModel, AutoTokenizer
        except ImportError as e:
            raise WeightsUnavailable("transformers is not installed: {}".format(e))

        LOG.info("Loading %s (cache: %s)", config.model_id, weights_cache)
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(
                config.model_id, cache_dir=weights_cache
            )
            self.model = AutoModel.from_pretrained(
                config.model_id, cache_dir=weights_cache
            )
        except (OSError, ValueError) as e:
            raise WeightsUnavailable(
                "Cannot load weights for {}: {}".format(config.name, e)
            )

        if self.model.config.hidden_size != config.hidden_size:
            raise WeightsUnavailable(
                "{} reports hidden size {}, expected {}".format(
                    config.model_id, self.model.config.hidden_size, config.hidden_size
                )
            )

        self._torch = torch
        self.device = device
        self.model.to(device)
        self.model.eval()
        for param in self.model.parameters():
            param.requires_grad_(False)

        limit = self.tokenizer.model_max_length
        if limit > MAX_POSITIONS_SENTINEL:
            limit = getattr(self.model.config, "max_position_embeddings", 512)
        self.max_pieces = limit - self.tokenizer.num_special_tokens_to_add(pair=False)

    def tokenize(self, word):
        pieces = self.tokenizer.tokenize(word)
        if not pieces:
            LOG.debug("Tokenizer produced nothing for %r, using unknown token", word)
            pieces = [self.tokenizer.unk_token]
        return pieces

    def _encode(self, piece_lists):
        out = []
        for start in range(0, len(piece_lists), TRANSFORMER_CHUNK):
            out.extend(self._encode_chunk(piece_lists[start : start + TRANSFORMER_CHUNK]))
        return out

    def _encode_chunk(self, piece_lists):
        torch = self._torch
        sequences = [
            self.tokenizer.build_inputs_with_special_tokens(
                self.tokenizer.convert_tokens_to_ids(pieces)
            )
            for pieces in piece_lists
        ]
        width = max(len(s) for s in sequences)
        pad_id = self.tokenizer.pad_token_id or 0
        input_ids = torch.full((len(sequences), width), pad_id, dtype=torch.long)
        attention = torch.zeros((len(sequences), width), dtype=torch.long)
        for i, seq in enumerate(sequences):
            input_ids[i, : len(seq)] = torch.tensor(seq, dtype=torch.long)
            attention[i, : len(seq)] = 1

        with torch.no_grad():
            hidden = self.model(
                input_ids=input_ids.to(self.device),
                attention_mask=attention.to(self.device),
            ).last_hidden_state

        hidden = hidden.float().cpu().numpy()
        # position 0 is the leading special token
        return [
            np.ascontiguousarray(hidden[i, 1 : 1 + len(pieces)])
            for i, pieces in enumerate(piece_lists)
        ]


_LOADED = {}
_LOAD_LOCK = threading.RLock()


def load_backend(config, weights_cache=None):
    """
    Load an embedding backend, once per (name, weights_cache).

    Parameters
    ----------
    config : EmbeddingBackendConfig or str
        Backend config or registered name.
    weights_cache : str, optional
        Local weight directory for pretrained backends.

    Returns
    -------
    EmbeddingBackend

    Raises
    ------
    UnknownBackend
        the name is not registered
    WeightsUnavailable
        pretrained weights cannot be loaded

    """
    if not isinstance(config, EmbeddingBackendConfig):
        config = get_backend_config(config)

    if config.kind == HASH:
        return HashBackend(config)

    key = (config.name, weights_cache)
    with _LOAD_LOCK:
        if key not in _LOADED:
            _LOADED[key] = TransformerBackend(config, weights_cache=weights_cache)
        return _LOADED[key]
