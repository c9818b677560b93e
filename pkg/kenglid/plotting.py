# -*- coding: utf-8 -*-
"""
Static figures: training curves, tag distribution bars and confusion
heatmaps. Everything is drawn with the Agg backend and written as PNG.

"""

import logging
import pathlib

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from sklearn.metrics import ConfusionMatrixDisplay  # noqa: E402

LOG = logging.getLogger(__name__)

DPI = 160
LOSS_PNG = "loss.png"
ACCURACY_PNG = "accuracy.png"

_CURVES = {
    "loss": ("train_loss", "val_loss", "Loss"),
    "accuracy": ("train_accuracy", "val_accuracy", "Accuracy"),
}


def history_figure(history, metric):
    """
    Training and validation curves of one metric.

    Parameters
    ----------
    history : kenglid.classifier.TrainingHistory
        History with at least one epoch.
    metric : {"loss", "accuracy"}
        Which pair of series to draw.

    Returns
    -------
    matplotlib.figure.Figure
        One axes, one x tick per epoch, a train and a validation line.

    """
    train_key, val_key, ylabel = _CURVES[metric]
    epochs = history.series("epoch")

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(epochs, history.series(train_key), marker="o", label="train")
    ax.plot(epochs, history.series(val_key), marker="o", label="validation")
    ax.set_xticks(epochs)
    if len(epochs) == 1:
        ax.set_xlim(epochs[0] - 1, epochs[0] + 1)
    if history.best_epoch:
        ax.axvline(history.best_epoch, color="grey", linestyle="--", linewidth=1)
    ax.set_title("Training and validation {}".format(metric))
    ax.set_xlabel("Epoch")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def _save(fig, path):
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    LOG.info("Wrote %s", path)
    return path


def plot_history(history, out_dir):
    """
    Write ``loss.png`` and ``accuracy.png`` for a training history.

    Returns
    -------
    dict
        Image path by metric.
    """
    out_dir = pathlib.Path(out_dir)
    return {
        "loss": _save(history_figure(history, "loss"), out_dir / LOSS_PNG),
        "accuracy": _save(history_figure(history, "accuracy"), out_dir / ACCURACY_PNG),
    }


def plot_distribution(stats, path, title="Tag distribution"):
    """Bar chart of tag percentages, counts written above the bars."""
    tags = list(stats.counts)
    fig, ax = plt.subplots(figsize=(8, 5))
    bars = ax.bar(tags, [stats.percentages[t] for t in tags])
    ax.bar_label(bars, labels=[str(stats.counts[t]) for t in tags])
    ax.set_title("{} ({} tokens)".format(title, stats.total))
    ax.set_xlabel("Tag")
    ax.set_ylabel("Percent")
    fig.tight_layout()
    return _save(fig, path)


def plot_confusion(matrix, path, title="Confusion matrix"):
    """Heatmap of a :class:`~kenglid.evaluation.ConfusionMatrix`."""
    fig, ax = plt.subplots(figsize=(7, 6))
    disp = ConfusionMatrixDisplay(
        confusion_matrix=matrix.counts, display_labels=list(matrix.scheme.tags)
    )
    disp.plot(ax=ax, values_format="d", colorbar=False)
    ax.set_title(title)
    ax.set_xlabel("Predicted")
    ax.set_ylabel("Gold")
    fig.tight_layout()
    return _save(fig, path)
