# -*- coding: utf-8 -*-
"""
Score tag predictions the way the shared task does.

Scores come from a confusion matrix over the scheme's tags. Precision,
recall and F1 of a class with a zero denominator are 0. Weighted scores
average per-class scores by gold support; macro scores are the plain mean
over the label set, which is the tags present in gold unless the caller asks
for all of them.

"""

import logging
from dataclasses import dataclass

import numpy as np
from sklearn.metrics import confusion_matrix as sk_confusion_matrix

from kenglid.corpus import DEFAULT_SCHEME
from kenglid.errors import EmptyMatrix, LengthMismatch

LOG = logging.getLogger(__name__)

WEIGHTED = "weighted"
MACRO = "macro"
MODES = (WEIGHTED, MACRO)
PRESENT_IN_GOLD = "present-in-gold"
ALL_TAGS = "all-six"
LABEL_SETS = (PRESENT_IN_GOLD, ALL_TAGS)
ZERO_DIVISION = 0.0
RANK_PRECISION = 2


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """
    Counts indexed (gold, predicted) in scheme order.
    """

    counts: np.ndarray
    scheme: object = DEFAULT_SCHEME

    @property
    def total(self):
        return int(self.counts.sum())

    @property
    def supports(self):
        return self.counts.sum(axis=1)

    @property
    def predicted(self):
        return self.counts.sum(axis=0)

    def cell(self, gold, pred):
        return int(self.counts[self.scheme.index(gold), self.scheme.index(pred)])


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class AggregateScores:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvaluationReport:
    per_class: dict
    weighted: AggregateScores
    macro: AggregateScores
    accuracy: float
    total: int
    label_set: str = PRESENT_IN_GOLD
    zero_division: float = ZERO_DIVISION


@dataclass(frozen=True)
class LeaderboardEntry:
    rank: int
    name: str
    report: EvaluationReport
    key: float


class RankedLeaderboard(object):
    """
    Reports ordered by weighted F1, rounded to ``precision`` decimals.

    Equal rounded scores share a rank and the next distinct score takes the
    next rank, so four runs scoring 0.86, 0.84, 0.84 and 0.83 rank 1, 2, 2, 3.
    """

    def __init__(self, entries, precision=RANK_PRECISION):
        self.entries = list(entries)
        self.precision = precision

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def ranks(self):
        return {e.name: e.rank for e in self.entries}


def _check_tags(tags, scheme):
    return [scheme.normalize(tag) for tag in tags]


def confusion(gold, pred, scheme=DEFAULT_SCHEME):
    """
    Build the confusion matrix of two aligned tag sequences.

    Parameters
    ----------
    gold, pred : sequence of str
        Gold and predicted tags, position by position.
    scheme : TagScheme, optional
        Tag set and order of the matrix.

    Returns
    -------
    ConfusionMatrix

    Raises
    ------
    LengthMismatch
        the sequences differ in length
    EmptyMatrix
        the sequences are empty
    UnknownTag
        a tag is outside the scheme

    """
    if len(gold) != len(pred):
        raise LengthMismatch(len(gold), len(pred))
    if len(gold) == 0:
        raise EmptyMatrix("Nothing to evaluate")

    gold = _check_tags(gold, scheme)
    pred = _check_tags(pred, scheme)
    counts = sk_confusion_matrix(gold, pred, labels=list(scheme.tags))
    return ConfusionMatrix(counts=counts.astype(np.int64), scheme=scheme)


def _safe_divide(num, den):
    num = np.asarray(num, dtype=np.float64)
    den = np.asarray(den, dtype=np.float64)
    out = np.full(num.shape, ZERO_DIVISION, dtype=np.float64)
    np.divide(num, den, out=out, where=den > 0)
    return out


def _class_arrays(m):
    tp = np.diag(m.counts).astype(np.float64)
    precision = _safe_divide(tp, m.predicted)
    recall = _safe_divide(tp, m.supports)
    f1 = _safe_divide(2 * precision * recall, precision + recall)
    return precision, recall, f1, m.supports


def per_class_scores(m, tag):
    """
    Precision, recall, F1 and gold support of one tag.

    Returns
    -------
    ClassScores
    """
    i = m.scheme.index(tag)
    precision, recall, f1, support = _class_arrays(m)
    return ClassScores(
        float(precision[i]), float(recall[i]), float(f1[i]), int(support[i])
    )


def _label_indices(m, label_set):
    if label_set == PRESENT_IN_GOLD:
        return np.flatnonzero(m.supports > 0)
    if label_set == ALL_TAGS:
        return np.arange(len(m.scheme))
    raise ValueError(
        "label_set must be one of {}, got {!r}".format(LABEL_SETS, label_set)
    )


def aggregate_scores(m, mode=WEIGHTED, label_set=PRESENT_IN_GOLD):
    """
    Weighted or macro precision, recall and F1.

    Parameters
    ----------
    m : ConfusionMatrix
        Matrix to score.
    mode : {"weighted", "macro"}
        Support-weighted mean or plain mean of per-class scores.
    label_set : {"present-in-gold", "all-six"}
        Tags the mean runs over.

    Returns
    -------
    AggregateScores

    Raises
    ------
    EmptyMatrix
        the matrix counts nothing

    """
    if m.total == 0:
        raise EmptyMatrix("Cannot aggregate an empty confusion matrix")
    if mode not in MODES:
        raise ValueError("mode must be one of {}, got {!r}".format(MODES, mode))

    idx = _label_indices(m, label_set)
    precision, recall, f1, support = _class_arrays(m)
    if mode == WEIGHTED:
        weights = support[idx].astype(np.float64)
    else:
        weights = np.ones(len(idx), dtype=np.float64)
    weights = weights / weights.sum()
    return AggregateScores(
        precision=float(np.dot(weights, precision[idx])),
        recall=float(np.dot(weights, recall[idx])),
        f1=float(np.dot(weights, f1[idx])),
    )


def build_report(m, label_set=PRESENT_IN_GOLD):
    """Full :class:`EvaluationReport` of a confusion matrix."""
    per_class = {tag: per_class_scores(m, tag) for tag in m.scheme.tags}
    return EvaluationReport(
        per_class=per_class,
        weighted=aggregate_scores(m, WEIGHTED, label_set),
        macro=aggregate_scores(m, MACRO, label_set),
        accuracy=float(np.trace(m.counts)) / m.total,
        total=m.total,
        label_set=label_set,
    )


def evaluate(gold, pred, scheme=DEFAULT_SCHEME, label_set=PRESENT_IN_GOLD):
    """
    Score predictions against gold tags.

    Returns
    -------
    (ConfusionMatrix, EvaluationReport)
    """
    m = confusion(gold, pred, scheme)
    report = build_report(m, label_set)
    LOG.info(
        "Weighted P/R/F1 %.4f/%.4f/%.4f, macro P/R/F1 %.4f/%.4f/%.4f",
        report.weighted.precision,
        report.weighted.recall,
        report.weighted.f1,
        report.macro.precision,
        report.macro.recall,
        report.macro.f1,
    )
    return m, report


def rank(reports, precision=RANK_PRECISION):
    """
    Rank named reports by weighted F1.

    Parameters
    ----------
    reports : dict or sequence of (str, EvaluationReport)
        Reports by run name.
    precision : int, optional
        Decimals compared; scores equal at this precision share a rank.

    Returns
    -------
    RankedLeaderboard
        Best first, ties listed by name.

    """
    items = list(reports.items()) if isinstance(reports, dict) else list(reports)
    keyed = sorted(
        ((round(report.weighted.f1, precision), name, report) for name, report in items),
        key=lambda x: (-x[0], x[1]),
    )

    entries = []
    current = 0
    previous = None
    for key, name, report in keyed:
        if key != previous:
            current += 1
            previous = key
        entries.append(LeaderboardEntry(current, name, report, key))
    return RankedLeaderboard(entries, precision)


def _row(label, p, r, f, support="", width=16):
    return "{:<{w}} {:>9.4f} {:>9.4f} {:>9.4f} {:>9}".format(
        label, p, r, f, support, w=width
    )


def format_report(report):
    """
    Render a report as a text table.

    One row per tag, then the weighted and macro rows.
    """
    header = "{:<16} {:>9} {:>9} {:>9} {:>9}".format(
        "", "precision", "recall", "f1-score", "support"
    )
    lines = [header, ""]
    for tag, s in report.per_class.items():
        lines.append(_row(tag, s.precision, s.recall, s.f1, s.support))
    lines.append("")
    lines.append("{:<16} {:>9} {:>9} {:>9.4f} {:>9}".format(
        "accuracy", "", "", report.accuracy, report.total))
    lines.append(_row("weighted avg", report.weighted.precision,
                      report.weighted.recall, report.weighted.f1, report.total))
    lines.append(_row("macro avg", report.macro.precision,
                      report.macro.recall, report.macro.f1, report.total))
    lines.append("")
    lines.append("label set: {}; empty classes score {}".format(
        report.label_set, report.zero_division))
    return "\n".join(lines)


def report_to_dict(report):
    """Plain-data form of a report, for YAML output."""
    def agg(a):
        return {"precision": a.precision, "recall": a.recall, "f1": a.f1}

    return {
        "label_set": report.label_set,
        "zero_division": report.zero_division,
        "total": report.total,
        "accuracy": report.accuracy,
        "weighted": agg(report.weighted),
        "macro": agg(report.macro),
        "per_class": {
            tag: {
                "precision": s.precision,
                "recall": s.recall,
                "f1": s.f1,
                "support": s.support,
            }
            for tag, s in report.per_class.items()
        },
    }


def format_leaderboard(board):
    """Render a leaderboard with weighted and macro columns."""
    lines = [
        "{:<5} {:<24} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}".format(
            "rank", "name", "w-P", "w-R", "w-F1", "m-P", "m-R", "m-F1"
        )
    ]
    for e in board:
        w, m = e.report.weighted, e.report.macro
        lines.append(
            "{:<5d} {:<24} {:>6.2f} {:>6.2f} {:>6.2f} {:>6.2f} {:>6.2f} {:>6.2f}".format(
                e.rank, e.name, w.precision, w.recall, w.f1,
                m.precision, m.recall, m.f1,
            )
        )
    return "\n".join(lines)


def leaderboard_to_dict(board):
    return {
        "precision": board.precision,
        "entries": [
            {
                "rank": e.rank,
                "name": e.name,
                "weighted_f1": e.report.weighted.f1,
                "macro_f1": e.report.macro.f1,
            }
            for e in board
        ],
    }
