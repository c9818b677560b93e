# -*- coding: utf-8 -*-
import numpy as np
import pytest

from kenglid.corpus import (
    CANONICAL_TAGS,
    DEFAULT_SCHEME,
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
from kenglid.errors import (
    EmptyCorpus,
    MalformedLine,
    MissingFile,
    StratumTooSmall,
    UnknownTag,
)
from kenglid.util import read_yaml


def test_load_tsv(write_file):
    path = write_file("toy.tsv", "ninna\tkn\nhello\tEN\n\nbengaluru\tlocation\n")
    corpus = load_corpus(path)

    assert corpus.words == ["ninna", "hello", "bengaluru"]
    assert corpus.tags == ["kn", "en", "location"]
    assert corpus.line_numbers == (1, 2, 4)
    assert corpus.format == "tsv"


def test_load_csv(write_file):
    path = write_file("toy.csv", "word,tag\nninna,kn\n\"hi, there\",en\n")
    corpus = load_corpus(path)

    assert corpus.format == "csv"
    assert corpus.words == ["ninna", "hi, there"]
    assert corpus.line_numbers == (2, 3)


def test_csv_needs_header(write_file):
    path = write_file("bad.csv", "word,tag,extra\nninna,kn\n")
    with pytest.raises(MalformedLine) as e:
        load_corpus(path)
    assert e.value.line_no == 1


def test_wrong_column_count(write_file):
    path = write_file("bad.tsv", "ninna\tkn\nhello\n")
    with pytest.raises(MalformedLine) as e:
        load_corpus(path)
    assert e.value.line_no == 2


def test_empty_word(write_file):
    path = write_file("bad.tsv", "ninna\tkn\n  \ten\n")
    with pytest.raises(MalformedLine):
        load_corpus(path)


def test_unknown_tag_names_line(write_file):
    path = write_file("bad.tsv", "ninna\tkn\n\nhello\tenglish\n")
    with pytest.raises(UnknownTag) as e:
        load_corpus(path)
    assert e.value.line_no == 3
    assert e.value.text == "english"


def test_empty_file(write_file):
    with pytest.raises(EmptyCorpus):
        load_corpus(write_file("empty.tsv", "\n\n"))


def test_missing_file(tmp_path):
    with pytest.raises(MissingFile):
        load_corpus(tmp_path / "nope.tsv")


def test_scheme_order():
    assert DEFAULT_SCHEME.tags == CANONICAL_TAGS
    assert DEFAULT_SCHEME.tags == ("kn", "en", "en-kn", "name", "location", "other")


@pytest.mark.parametrize("tag", CANONICAL_TAGS)
def test_encode_decode(tag):
    vec = encode_tag(DEFAULT_SCHEME, tag)
    assert vec.sum() == 1
    assert vec.dtype == np.int8
    assert decode_tag(DEFAULT_SCHEME, vec) == tag


def test_encode_is_case_insensitive():
    assert (DEFAULT_SCHEME.encode(" EN-KN ") == DEFAULT_SCHEME.encode("en-kn")).all()


def test_encode_unknown():
    with pytest.raises(UnknownTag):
        DEFAULT_SCHEME.encode("hindi")


def test_decode_tie_goes_to_lowest_index():
    assert DEFAULT_SCHEME.decode([0.0, 0.4, 0.0, 0.4, 0.2, 0.0]) == "en"


def test_decode_wrong_length():
    with pytest.raises(ValueError):
        DEFAULT_SCHEME.decode([1, 0, 0])


def test_custom_scheme_rejects_duplicates():
    with pytest.raises(ValueError):
        TagScheme(("kn", "KN"))


def test_split_stratified(synthetic_corpus):
    train, val = split_corpus(synthetic_corpus, 0.1, seed=3)

    assert len(train) == 180
    assert len(val) == 20
    assert val.tags.count("kn") == 10
    assert val.tags.count("en") == 10
    lines = set(train.line_numbers) | set(val.line_numbers)
    assert lines == set(synthetic_corpus.line_numbers)
    assert not set(train.line_numbers) & set(val.line_numbers)
    assert list(train.line_numbers) == sorted(train.line_numbers)


def test_split_is_deterministic(synthetic_corpus):
    a = split_corpus(synthetic_corpus, 0.1, seed=5)
    b = split_corpus(synthetic_corpus, 0.1, seed=5)
    c = split_corpus(synthetic_corpus, 0.1, seed=6)

    assert a[1].line_numbers == b[1].line_numbers
    assert a[1].line_numbers != c[1].line_numbers


def test_split_small_stratum_gets_one():
    pairs = [("w{}".format(i), "kn") for i in range(20)] + [("ಊರು", "location")] * 2
    train, val = split_corpus(from_pairs(pairs), 0.1, seed=0)

    assert val.tags.count("location") == 1
    assert train.tags.count("location") == 1
    assert val.tags.count("kn") == 2


def test_split_singleton_stratum():
    pairs = [("w{}".format(i), "kn") for i in range(20)] + [("mysuru", "location")]
    with pytest.raises(StratumTooSmall) as e:
        split_corpus(from_pairs(pairs), 0.1)
    assert e.value.tag == "location"
    assert e.value.size == 1


def test_split_unstratified(synthetic_corpus):
    train, val = split_corpus(synthetic_corpus, 0.25, seed=0, stratified=False)
    assert len(val) == 50
    assert len(train) == 150


def test_split_bad_fraction(synthetic_corpus):
    with pytest.raises(ValueError):
        split_corpus(synthetic_corpus, 1.0)


def test_distribution():
    corpus = from_pairs([("a", "kn"), ("b", "kn"), ("c", "en"), ("d", "other")])
    stats = compute_distribution(corpus)

    assert stats.total == 4
    assert stats.percentages["kn"] == pytest.approx(50.0)
    assert stats.percentages["en"] == pytest.approx(25.0)
    assert stats.percentages["other"] == pytest.approx(25.0)
    assert stats.counts["name"] == 0
    assert list(stats.counts) == list(CANONICAL_TAGS)
    assert sum(stats.percentages.values()) == pytest.approx(100.0)
    assert "50.00%" in format_distribution(stats)


def test_write_distribution(tmp_path):
    stats = compute_distribution(from_pairs([("a", "kn"), ("b", "en")]))
    write_distribution(stats, tmp_path / "dist.yaml")
    data = read_yaml(tmp_path / "dist.yaml")

    assert data["total"] == 2
    assert data["tags"]["kn"] == {"count": 1, "percentage": 50.0}


def test_read_words_ignores_tags(write_file):
    path = write_file("words.tsv", "ninna\tkn\nhello\nsari\ten\n")
    assert read_words(path) == ["ninna", "hello", "sari"]


def test_read_words_keeps_blank_lines(write_file):
    path = write_file("words.tsv", "ninna\n\n   \nhello\n")
    assert read_words(path) == ["ninna", "", "", "hello"]


def test_read_words_only_blank_lines(write_file):
    with pytest.raises(EmptyCorpus):
        read_words(write_file("words.tsv", "\n\n"))


def test_read_words_too_many_columns(write_file):
    with pytest.raises(MalformedLine):
        read_words(write_file("words.tsv", "a\tb\tc\n"))


def test_read_words_empty(write_file):
    with pytest.raises(EmptyCorpus):
        read_words(write_file("words.tsv", ""))


def test_write_corpus_loads_back(tmp_path):
    path = tmp_path / "out" / "pred.tsv"
    write_corpus(path, ["ninna", "hello"], ["kn", "en"])
    assert load_corpus(path).tags == ["kn", "en"]
