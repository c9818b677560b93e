# -*- coding: utf-8 -*-
import numpy as np
import pytest
from sklearn.metrics import f1_score, precision_score, recall_score

from kenglid.corpus import CANONICAL_TAGS
from kenglid.errors import EmptyMatrix, LengthMismatch, UnknownTag
from kenglid.evaluation import (
    ALL_TAGS,
    MACRO,
    PRESENT_IN_GOLD,
    WEIGHTED,
    AggregateScores,
    ClassScores,
    EvaluationReport,
    aggregate_scores,
    confusion,
    evaluate,
    format_leaderboard,
    format_report,
    leaderboard_to_dict,
    per_class_scores,
    rank,
    report_to_dict,
)


def _brute_force(gold, pred, labels):
    """Scores straight from the pairs, no confusion matrix involved."""
    scores = {}
    for tag in CANONICAL_TAGS:
        tp = sum(1 for g, p in zip(gold, pred) if g == tag and p == tag)
        n_pred = sum(1 for p in pred if p == tag)
        n_gold = sum(1 for g in gold if g == tag)
        precision = tp / n_pred if n_pred else 0.0
        recall = tp / n_gold if n_gold else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        scores[tag] = (precision, recall, f1, n_gold)

    weighted = [
        sum(scores[t][k] * scores[t][3] for t in labels)
        / sum(scores[t][3] for t in labels)
        for k in range(3)
    ]
    macro = [sum(scores[t][k] for t in labels) / len(labels) for k in range(3)]
    return scores, weighted, macro


def _report(f1):
    agg = AggregateScores(f1, f1, f1)
    return EvaluationReport(
        per_class={}, weighted=agg, macro=agg, accuracy=f1, total=1
    )


def test_worked_example():
    m, report = evaluate(["kn", "kn", "en"], ["kn", "en", "en"])

    assert report.weighted.f1 == pytest.approx(2 / 3, abs=1e-12)
    kn = report.per_class["kn"]
    en = report.per_class["en"]
    assert (kn.precision, kn.recall) == (1.0, 0.5)
    assert kn.f1 == pytest.approx(2 / 3, abs=1e-12)
    assert (en.precision, en.recall) == (0.5, 1.0)
    assert en.f1 == pytest.approx(2 / 3, abs=1e-12)
    assert report.accuracy == pytest.approx(2 / 3)
    assert m.cell("kn", "en") == 1
    assert m.total == 3


def test_perfect_predictions():
    tags = ["kn", "en", "other", "name", "kn"]
    _, report = evaluate(tags, tags)
    assert report.weighted.f1 == pytest.approx(1.0)
    macro = report.macro
    assert (macro.precision, macro.recall, macro.f1) == pytest.approx((1.0, 1.0, 1.0))


def test_absent_class_scores_zero():
    m = confusion(["kn", "kn"], ["kn", "location"])
    assert per_class_scores(m, "location") == ClassScores(0.0, 0.0, 0.0, 0)
    assert per_class_scores(m, "name") == ClassScores(0.0, 0.0, 0.0, 0)


def test_macro_label_sets():
    m = confusion(["kn", "kn", "en"], ["kn", "en", "en"])
    present = aggregate_scores(m, MACRO, PRESENT_IN_GOLD)
    every = aggregate_scores(m, MACRO, ALL_TAGS)

    assert present.f1 == pytest.approx(2 / 3)
    assert every.f1 == pytest.approx(2 * (2 / 3) / 6)


def test_oracle_agreement():
    rng = np.random.default_rng(2023)
    for _ in range(1000):
        n = int(rng.integers(1, 51))
        gold = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        pred = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        _, report = evaluate(gold, pred)

        labels = [t for t in CANONICAL_TAGS if t in gold]
        scores, weighted, macro = _brute_force(gold, pred, labels)

        for tag, s in report.per_class.items():
            assert (s.precision, s.recall, s.f1) == pytest.approx(
                scores[tag][:3], abs=1e-9
            )
        got_w = report.weighted
        got_m = report.macro
        assert (got_w.precision, got_w.recall, got_w.f1) == pytest.approx(
            weighted, abs=1e-9
        )
        assert (got_m.precision, got_m.recall, got_m.f1) == pytest.approx(
            macro, abs=1e-9
        )


@pytest.mark.parametrize("mode", [WEIGHTED, MACRO])
def test_matches_sklearn(mode):
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 51))
        gold = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        pred = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        m, _ = evaluate(gold, pred)
        labels = [t for t in CANONICAL_TAGS if t in gold]
        ours = aggregate_scores(m, mode)
        kwargs = dict(labels=labels, average=mode, zero_division=0)

        assert ours.precision == pytest.approx(precision_score(gold, pred, **kwargs))
        assert ours.recall == pytest.approx(recall_score(gold, pred, **kwargs))
        assert ours.f1 == pytest.approx(f1_score(gold, pred, **kwargs))


def test_permutation_invariance():
    rng = np.random.default_rng(11)
    gold = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, 40)]
    pred = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, 40)]
    order = rng.permutation(40)
    _, a = evaluate(gold, pred)
    _, b = evaluate([gold[i] for i in order], [pred[i] for i in order])

    assert a.weighted == b.weighted
    assert a.macro == b.macro


def test_scores_are_bounded():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 30))
        gold = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        pred = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        _, report = evaluate(gold, pred)
        for agg in (report.weighted, report.macro):
            for value in (agg.precision, agg.recall, agg.f1):
                assert 0.0 <= value <= 1.0 + 1e-12


def test_weighted_f1_between_class_extremes():
    rng = np.random.default_rng(13)
    for _ in range(200):
        n = int(rng.integers(1, 30))
        gold = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        pred = [CANONICAL_TAGS[i] for i in rng.integers(0, 6, n)]
        _, report = evaluate(gold, pred)
        f1s = [report.per_class[t].f1 for t in set(gold)]
        assert min(f1s) - 1e-12 <= report.weighted.f1 <= max(f1s) + 1e-12


def test_length_mismatch():
    with pytest.raises(LengthMismatch) as e:
        confusion(["kn", "en"], ["kn"])
    assert (e.value.gold_len, e.value.pred_len) == (2, 1)


def test_empty_input():
    with pytest.raises(EmptyMatrix):
        confusion([], [])


def test_unknown_tag():
    with pytest.raises(UnknownTag):
        confusion(["kn"], ["tulu"])


def test_tags_are_case_insensitive():
    _, report = evaluate(["KN", "En"], ["kn", "en"])
    assert report.weighted.f1 == pytest.approx(1.0)


def test_rank_shares_places():
    reports = {
        "team-a": _report(0.86),
        "team-b": _report(0.84),
        "team-c": _report(0.84),
        "team-d": _report(0.83),
    }
    board = rank(reports)

    assert [e.rank for e in board] == [1, 2, 2, 3]
    assert [e.name for e in board] == ["team-a", "team-b", "team-c", "team-d"]
    assert board.ranks["team-c"] == 2


def test_rank_single_report():
    board = rank({"only": _report(0.5)})
    assert [(e.name, e.rank) for e in board] == [("only", 1)]


def test_rank_compares_rounded_scores():
    board = rank([("x", _report(0.8412)), ("y", _report(0.8449))])
    assert [e.rank for e in board] == [1, 1]
    assert [e.name for e in board] == ["x", "y"]

    board = rank([("x", _report(0.8412)), ("y", _report(0.8449))], precision=3)
    assert [e.name for e in board] == ["y", "x"]
    assert [e.rank for e in board] == [1, 2]


def test_report_output():
    _, report = evaluate(["kn", "kn", "en"], ["kn", "en", "en"])
    text = format_report(report)
    assert "weighted avg" in text
    assert "macro avg" in text

    data = report_to_dict(report)
    assert data["weighted"]["f1"] == pytest.approx(2 / 3)
    assert data["per_class"]["kn"]["support"] == 2
    assert data["label_set"] == PRESENT_IN_GOLD


def test_leaderboard_output():
    board = rank({"a": _report(0.9), "b": _report(0.8)})
    assert format_leaderboard(board).splitlines()[1].startswith("1")
    assert leaderboard_to_dict(board)["entries"][1]["rank"] == 2
