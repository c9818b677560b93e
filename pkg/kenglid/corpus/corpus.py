# -*- coding: utf-8 -*-
"""
Read, check, encode, split and summarize word/tag corpora.

A corpus file holds one token per line. The TSV form is ``word<TAB>tag``;
the CSV form has a two-column header row followed by ``word,tag`` rows.
Blank lines are skipped but still counted, so every error names the line
as an editor would show it.

"""

import csv
import io
import logging
import math
import pathlib
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from kenglid.errors import (
    EmptyCorpus,
    MalformedLine,
    MissingFile,
    StratumTooSmall,
    UnknownTag,
)
from kenglid.util import write_yaml

LOG = logging.getLogger(__name__)

CANONICAL_TAGS = ("kn", "en", "en-kn", "name", "location", "other")
FORMATS = ("tsv", "csv")
DEFAULT_VAL_FRACTION = 0.1


class TagScheme(object):
    """
    An ordered tag set with one-hot encoding.

    Parameters
    ----------
    tags : sequence of str, optional
        Tag names in index order. Defaults to the canonical six tags.

    Examples
    --------
    >>> scheme = TagScheme()
    >>> scheme.encode("en")
    array([0, 1, 0, 0, 0, 0], dtype=int8)
    >>> scheme.decode([0, 0, 1, 0, 0, 0])
    'en-kn'

    """

    def __init__(self, tags=CANONICAL_TAGS):
        tags = tuple(str(t).strip().lower() for t in tags)
        if len(set(tags)) != len(tags) or not tags:
            raise ValueError("Tag names must be distinct: {}".format(tags))
        self.tags = tags
        self._index = {t: i for i, t in enumerate(tags)}

    def __len__(self):
        return len(self.tags)

    def __iter__(self):
        return iter(self.tags)

    def __contains__(self, tag):
        return str(tag).strip().lower() in self._index

    def __eq__(self, other):
        return isinstance(other, TagScheme) and self.tags == other.tags

    def __hash__(self):
        return hash(self.tags)

    def __repr__(self):
        return "TagScheme({!r})".format(self.tags)

    def normalize(self, tag):
        """
        Map a tag as written in a file to its scheme name.

        Matching is case-insensitive and ignores surrounding whitespace.

        Raises
        ------
        UnknownTag
            tag is not part of the scheme
        """
        norm = str(tag).strip().lower()
        if norm not in self._index:
            raise UnknownTag(tag)
        return norm

    def index(self, tag):
        return self._index[self.normalize(tag)]

    def encode(self, tag):
        """
        One-hot encode a tag.

        Returns
        -------
        numpy.ndarray
            int8 vector of length ``len(self)`` with a single 1.
        """
        vec = np.zeros(len(self.tags), dtype=np.int8)
        vec[self.index(tag)] = 1
        return vec

    def encode_many(self, tags):
        """One-hot encode a tag sequence into an (n, len(self)) matrix."""
        out = np.zeros((len(tags), len(self.tags)), dtype=np.int8)
        for row, tag in enumerate(tags):
            out[row, self.index(tag)] = 1
        return out

    def decode(self, vector):
        """
        Tag at the largest entry of ``vector``.

        Ties go to the lowest index, so a probability vector decodes the same
        way a one-hot vector does.
        """
        vector = np.asarray(vector)
        if vector.shape != (len(self.tags),):
            raise ValueError(
                "Expected a vector of length {}, got shape {}".format(
                    len(self.tags), vector.shape
                )
            )
        return self.tags[int(np.argmax(vector))]


DEFAULT_SCHEME = TagScheme()


@dataclass(frozen=True)
class LabeledToken:
    word: str
    tag: str


@dataclass(frozen=True)
class LabeledCorpus:
    """
    An immutable sequence of labeled tokens.

    ``line_numbers[i]`` is the source line of ``items[i]``.
    """

    items: tuple
    source: str = "<memory>"
    format: str = "tsv"
    line_numbers: tuple = field(default=())
    scheme: TagScheme = field(default=DEFAULT_SCHEME, compare=False)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def words(self):
        return [t.word for t in self.items]

    @property
    def tags(self):
        return [t.tag for t in self.items]

    def subset(self, indices, source=None):
        indices = list(indices)
        lines = self.line_numbers or tuple(range(1, len(self.items) + 1))
        return LabeledCorpus(
            items=tuple(self.items[i] for i in indices),
            source=source or self.source,
            format=self.format,
            line_numbers=tuple(lines[i] for i in indices),
            scheme=self.scheme,
        )


@dataclass(frozen=True)
class DistributionStats:
    """Per-tag counts and percentages, in scheme order."""

    counts: dict
    percentages: dict
    total: int

    def as_dict(self):
        return {
            "total": self.total,
            "tags": {
                tag: {
                    "count": int(self.counts[tag]),
                    "percentage": float(round(self.percentages[tag], 4)),
                }
                for tag in self.counts
            },
        }


def from_pairs(pairs, scheme=DEFAULT_SCHEME, source="<memory>"):
    """
    Build a corpus from (word, tag) pairs.

    Raises
    ------
    UnknownTag
        a tag is outside the scheme
    EmptyCorpus
        pairs is empty
    """
    items = []
    for word, tag in pairs:
        items.append(LabeledToken(_clean_word(word), scheme.normalize(tag)))
    if not items:
        raise EmptyCorpus("No tokens given")
    return LabeledCorpus(
        items=tuple(items),
        source=source,
        line_numbers=tuple(range(1, len(items) + 1)),
        scheme=scheme,
    )


def _clean_word(word):
    return str(word).replace("\t", " ").replace("\r", "").replace("\n", " ").strip()


def _guess_format(path):
    if path.suffix.lower() == ".csv":
        return "csv"
    return "tsv"


def _read_lines(path):
    path = pathlib.Path(path)
    if not path.is_file():
        raise MissingFile(path)
    with open(path, "r", encoding="utf-8-sig") as f:
        return f.read().splitlines()


def _tsv_rows(lines):
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        yield line_no, line.split("\t")


def _csv_rows(path, lines):
    reader = csv.reader(io.StringIO("\n".join(lines)))
    header_seen = False
    for row in reader:
        line_no = reader.line_num
        if not any(cell.strip() for cell in row):
            continue
        if not header_seen:
            if len(row) != 2:
                raise MalformedLine(path, line_no, "expected a two-column header")
            header_seen = True
            continue
        yield line_no, row


def load_corpus(path, format=None, scheme=DEFAULT_SCHEME):
    """
    Load a word/tag corpus.

    Parameters
    ----------
    path : str or pathlib.Path
        Corpus file, UTF-8.
    format : {"tsv", "csv"}, optional
        Defaults to "csv" for a ``.csv`` suffix and "tsv" otherwise.
    scheme : TagScheme, optional
        Tag set the file must use.

    Returns
    -------
    LabeledCorpus
        Every non-blank line of the file, in file order.

    Raises
    ------
    MissingFile
        path does not exist
    MalformedLine
        a line does not have exactly two columns or has an empty word
    UnknownTag
        a tag is outside the scheme
    EmptyCorpus
        the file holds no tokens

    """
    path = pathlib.Path(path)
    if format is None:
        format = _guess_format(path)
    format = format.lower()
    if format not in FORMATS:
        raise ValueError("Unknown corpus format {!r}".format(format))

    lines = _read_lines(path)
    rows = _csv_rows(path, lines) if format == "csv" else _tsv_rows(lines)

    items = []
    line_numbers = []
    for line_no, cols in rows:
        if len(cols) != 2:
            raise MalformedLine(
                path, line_no, "expected 2 columns, found {}".format(len(cols))
            )
        word = _clean_word(cols[0])
        if not word:
            raise MalformedLine(path, line_no, "empty word")
        try:
            tag = scheme.normalize(cols[1])
        except UnknownTag:
            raise UnknownTag(cols[1].strip(), line_no=line_no, path=path)
        items.append(LabeledToken(word, tag))
        line_numbers.append(line_no)

    if not items:
        raise EmptyCorpus("{} holds no tokens".format(path))

    LOG.info("Loaded %d tokens from %s", len(items), path)
    return LabeledCorpus(
        items=tuple(items),
        source=str(path),
        format=format,
        line_numbers=tuple(line_numbers),
        scheme=scheme,
    )


def read_words(path):
    """
    Read prediction input: one word per line, an optional tag column ignored.

    Returns
    -------
    list of str
        Words in file order. A blank line gives an empty word, so the
        result has one entry per input line.

    Raises
    ------
    MissingFile
        path does not exist
    MalformedLine
        a line has more than two tab-separated columns
    EmptyCorpus
        the file holds no words

    """
    words = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        cols = line.split("\t")
        if len(cols) > 2:
            raise MalformedLine(
                path, line_no, "expected 1 or 2 columns, found {}".format(len(cols))
            )
        words.append(_clean_word(cols[0]))

    if not any(words):
        raise EmptyCorpus("{} holds no words".format(path))
    return words


def write_corpus(path, words, tags):
    """
    Write ``word<TAB>tag`` lines.

    Parameters
    ----------
    path : str or pathlib.Path
        Destination, parent directories are created.
    words, tags : sequence of str
        Same length.
    """
    if len(words) != len(tags):
        raise ValueError("words and tags differ in length")
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for word, tag in zip(words, tags):
            f.write("{}\t{}\n".format(word, tag))
    LOG.debug("Wrote %d lines to %s", len(words), path)


def encode_tag(scheme, tag):
    """One-hot vector for ``tag`` under ``scheme``."""
    return scheme.encode(tag)


def decode_tag(scheme, vector):
    """Tag name for a one-hot (or probability) vector."""
    return scheme.decode(vector)


def _val_count(size, val_fraction):
    return int(math.floor(size * val_fraction + 0.5))


def split_corpus(corpus, val_fraction=DEFAULT_VAL_FRACTION, seed=0, stratified=True):
    """
    Split a corpus into training and validation parts.

    Parameters
    ----------
    corpus : LabeledCorpus
        Corpus to split.
    val_fraction : float
        Share of items, in (0, 1), that goes to validation.
    seed : int
        Seed of the shuffle, the split is a pure function of it.
    stratified : bool
        If true, every tag present in the corpus is split on its own and
        gets at least one validation item.

    Returns
    -------
    (LabeledCorpus, LabeledCorpus)
        Training and validation corpora, each in source order.

    Raises
    ------
    StratumTooSmall
        a stratum (or, unstratified, the whole corpus) cannot give at least
        one item to each side

    """
    if not 0.0 < val_fraction < 1.0:
        raise ValueError("val_fraction must lie in (0, 1), got {}".format(val_fraction))

    rng = np.random.default_rng(seed)
    if stratified:
        strata = defaultdict(list)
        for i, token in enumerate(corpus.items):
            strata[token.tag].append(i)
        groups = [(tag, strata[tag]) for tag in corpus.scheme.tags if tag in strata]
    else:
        groups = [("*", list(range(len(corpus))))]

    val_idx = []
    for tag, members in groups:
        n_val = max(1, _val_count(len(members), val_fraction))
        if len(members) < 2 or n_val >= len(members):
            raise StratumTooSmall(tag, len(members))
        chosen = rng.permutation(len(members))[:n_val]
        val_idx.extend(members[c] for c in chosen)

    val_set = set(val_idx)
    train_idx = [i for i in range(len(corpus)) if i not in val_set]
    val_idx = sorted(val_set)

    LOG.info(
        "Split %d tokens into %d training and %d validation (seed %d, %s)",
        len(corpus),
        len(train_idx),
        len(val_idx),
        seed,
        "stratified" if stratified else "unstratified",
    )
    return (
        corpus.subset(train_idx, source=corpus.source + "#train"),
        corpus.subset(val_idx, source=corpus.source + "#val"),
    )


def compute_distribution(corpus):
    """
    Count tags in a corpus.

    Returns
    -------
    DistributionStats
        Counts and percentages for every scheme tag, zero entries included.

    Raises
    ------
    EmptyCorpus
        corpus has no items

    """
    total = len(corpus)
    if total == 0:
        raise EmptyCorpus("Cannot compute the distribution of an empty corpus")

    counts = {tag: 0 for tag in corpus.scheme.tags}
    for token in corpus.items:
        counts[token.tag] += 1
    percentages = {tag: counts[tag] * 100.0 / total for tag in counts}
    return DistributionStats(counts=counts, percentages=percentages, total=total)


def write_distribution(stats, path):
    """Write a distribution report as YAML."""
    write_yaml(stats.as_dict(), path)


def format_distribution(stats):
    """
    Render a distribution as a plain text table.

    Returns
    -------
    str
        One row per tag plus a total row.
    """
    lines = ["{:<10} {:>8} {:>8}".format("tag", "count", "percent")]
    for tag, count in stats.counts.items():
        lines.append(
            "{:<10} {:>8d} {:>7.2f}%".format(tag, count, stats.percentages[tag])
        )
    lines.append("{:<10} {:>8d} {:>7.2f}%".format("total", stats.total, 100.0))
    return "\n".join(lines)
