# -*- coding: utf-8 -*-
import numpy as np
import pytest

from kenglid.corpus import from_pairs
from kenglid.embedding import hash_config, HashBackend

# disjoint letter sets give disjoint trigram sets
KN_LETTERS = "pt"
EN_LETTERS = "mn"


def synthetic_pairs(n=200, seed=0):
    """n words, half tagged kn and half en, separable by their letters."""
    rng = np.random.default_rng(seed)
    pairs = []
    for i in range(n):
        tag, letters = ("kn", KN_LETTERS) if i % 2 == 0 else ("en", EN_LETTERS)
        length = int(rng.integers(3, 9))
        word = "".join(rng.choice(list(letters), size=length))
        pairs.append((word, tag))
    return pairs


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def hash_backend():
    return HashBackend(hash_config(64))


@pytest.fixture
def synthetic_corpus():
    return from_pairs(synthetic_pairs())


@pytest.fixture
def synthetic_file(tmp_path):
    path = tmp_path / "synthetic.tsv"
    with open(path, "w", encoding="utf-8") as f:
        for word, tag in synthetic_pairs():
            f.write("{}\t{}\n".format(word, tag))
    return path
