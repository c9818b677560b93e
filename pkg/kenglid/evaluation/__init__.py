# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
#  Purpose: Shared-task style scoring.
#   Author: kenglid contributors
#
# -----------------------------------------------------------------------------
"""
kenglid.evaluation
==================

Confusion matrices, per-class, weighted and macro precision/recall/F1, and
leaderboards.

:license:
    CC0 1.0 Universal
    http://creativecommons.org/publicdomain/zero/1.0/
"""

from kenglid.evaluation.evaluation import (
    ALL_TAGS,
    LABEL_SETS,
    MACRO,
    PRESENT_IN_GOLD,
    RANK_PRECISION,
    WEIGHTED,
    AggregateScores,
    ClassScores,
    ConfusionMatrix,
    EvaluationReport,
    LeaderboardEntry,
    RankedLeaderboard,
    aggregate_scores,
    build_report,
    confusion,
    evaluate,
    format_leaderboard,
    format_report,
    leaderboard_to_dict,
    per_class_scores,
    rank,
    report_to_dict,
)

__all__ = [
    "ALL_TAGS",
    "LABEL_SETS",
    "MACRO",
    "PRESENT_IN_GOLD",
    "RANK_PRECISION",
    "WEIGHTED",
    "AggregateScores",
    "ClassScores",
    "ConfusionMatrix",
    "EvaluationReport",
    "LeaderboardEntry",
    "RankedLeaderboard",
    "aggregate_scores",
    "build_report",
    "confusion",
    "evaluate",
    "format_leaderboard",
    "format_report",
    "leaderboard_to_dict",
    "per_class_scores",
    "rank",
    "report_to_dict",
]
