# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
#  Purpose: Word/tag corpora.
#   Author: kenglid contributors
#
# -----------------------------------------------------------------------------
"""
kenglid.corpus
==============

Load, encode, split and summarize CoLI-Kenglish style word/tag corpora.

:license:
    CC0 1.0 Universal
    http://creativecommons.org/publicdomain/zero/1.0/
"""

from kenglid.corpus.corpus import (
    CANONICAL_TAGS,
    DEFAULT_SCHEME,
    DEFAULT_VAL_FRACTION,
    DistributionStats,
    LabeledCorpus,
    LabeledToken,
    TagScheme,
    compute_distribution,
    decode_tag,
    encode_tag,
    format_distribution,
    from_pairs,
    load_corpus,
    read_words,
    split_corpus,
    write_corpus,
    write_distribution,
)

__all__ = [
    "CANONICAL_TAGS",
    "DEFAULT_SCHEME",
    "DEFAULT_VAL_FRACTION",
    "DistributionStats",
    "LabeledCorpus",
    "LabeledToken",
    "TagScheme",
    "compute_distribution",
    "decode_tag",
    "encode_tag",
    "format_distribution",
    "from_pairs",
    "load_corpus",
    "read_words",
    "split_corpus",
    "write_corpus",
    "write_distribution",
]
