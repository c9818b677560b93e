# -*- coding: utf-8 -*-
"""
Command line interface.

Commands
    * train     train a head on a corpus, optionally score a test file
    * predict   tag a word list with a saved model
    * evaluate  score one or more prediction files against gold
    * stats     tag distribution of a corpus
    * plot      loss and accuracy curves of a training history

Optional
    * KENGLID_WEIGHTS_CACHE=/path/to/hf/cache
    * MAILHOST, LOG_SENDER, LOG_RECIPIENT to receive error logs by email

Every kenglid error ends the process with its own exit status, see
:mod:`kenglid.errors`.

"""

import argparse
import logging
import pathlib

from kenglid.classifier import (
    build_model,
    encode_corpus,
    format_summary,
    load_checkpoint,
    predict_words,
    save_checkpoint,
    train,
    TrainingHistory,
)
from kenglid.config import SNAPSHOT_NAME, resolve_config
from kenglid.corpus import (
    compute_distribution,
    format_distribution,
    load_corpus,
    read_words,
    split_corpus,
    write_corpus,
    write_distribution,
)
from kenglid.embedding import get_backend_config, load_backend
from kenglid.errors import ConfigError, KenglidError
from kenglid.evaluation import (
    LABEL_SETS,
    PRESENT_IN_GOLD,
    evaluate,
    format_leaderboard,
    format_report,
    leaderboard_to_dict,
    rank,
    report_to_dict,
)
from kenglid.plotting import plot_confusion, plot_distribution, plot_history
from kenglid.util import exit_with_error, setup_logging, write_yaml

LOG = logging.getLogger(__name__)

MODEL_NAME = "model.pt"
HISTORY_NAME = "history.yaml"
PREDICTIONS_NAME = "predictions.tsv"
TEST_PREDICTIONS_NAME = "test_predictions.tsv"
LEADERBOARD_NAME = "leaderboard.yaml"

# flags whose dest is a RunConfig key
_OVERRIDES = (
    "backend",
    "seed",
    "output_dir",
    "weights_cache",
    "val_fraction",
    "patience",
    "train_file",
    "test_file",
)


def _arg_parse(argv=None):
    description = "Word-level language identification for Kannada-English " \
                  "code-mixed text: train, predict, evaluate, stats and plot."

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="Flat YAML run configuration.")
    common.add_argument("--backend",
                        help="Embedding backend, e.g. bert-base-uncased or "
                             "hash-64.")
    common.add_argument("--seed", type=int, help="Seed for split, init and "
                                                 "batch order.")
    common.add_argument("-o", "--output-dir", help="Directory for outputs.")
    help_text = "Local weight cache for pretrained backends. Will override " \
                "the KENGLID_WEIGHTS_CACHE environment variable."
    common.add_argument("--weights-cache", help=help_text)
    common.add_argument("--val-fraction", type=float,
                        help="Share of the training file held out for "
                             "validation.")
    common.add_argument("--patience", type=int,
                        help="Epochs without validation improvement before "
                             "stopping.")
    common.add_argument("-v", "--verbose", help="Verbose logging",
                        action="store_true")

    parser = argparse.ArgumentParser(prog="kenglid", description=description)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("train", parents=[common], help="Train a model.")
    p.add_argument("--train-file", help="Labeled training corpus.")
    p.add_argument("--test-file", help="Labeled corpus to score after "
                                       "training.")

    p = sub.add_parser("predict", parents=[common], help="Tag a word list.")
    p.add_argument("checkpoint", help="Model written by train.")
    p.add_argument("input", help="One word per line, a tag column is "
                                 "ignored.")
    p.add_argument("--output", help="Predictions file, defaults to "
                                    "predictions.tsv in the output dir.")

    p = sub.add_parser("evaluate", parents=[common],
                       help="Score predictions against gold tags.")
    p.add_argument("gold", help="Gold corpus.")
    p.add_argument("predictions", nargs="+",
                   help="Prediction files; more than one are ranked.")
    p.add_argument("--label-set", choices=LABEL_SETS, default=PRESENT_IN_GOLD,
                   help="Tags the macro average runs over.")

    p = sub.add_parser("stats", parents=[common],
                       help="Tag distribution of a corpus.")
    p.add_argument("corpus", help="Labeled corpus.")

    p = sub.add_parser("plot", parents=[common],
                       help="Plot a training history.")
    p.add_argument("history", help="history.yaml written by train.")

    return parser.parse_args(argv)


def _resolve(args):
    overrides = {k: getattr(args, k, None) for k in _OVERRIDES}
    return resolve_config(args.config, overrides)


def _output_dir(cfg):
    out = pathlib.Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_report(out, stem, matrix, report):
    write_yaml(report_to_dict(report), out / "{}_report.yaml".format(stem))
    with open(out / "{}_report.txt".format(stem), "w", encoding="utf-8") as f:
        f.write(format_report(report) + "\n")
    plot_confusion(matrix, out / "{}_confusion.png".format(stem),
                   title="Confusion matrix: {}".format(stem))


def _run_names(paths):
    """
    Short unique names for prediction files.

    A file is named by its stem. Files sharing a name get parent directories
    prepended, joined by ``_``, until every name is unique, so
    ``runs/bert/predictions.tsv`` and ``runs/xlmr/predictions.tsv`` become
    ``bert_predictions`` and ``xlmr_predictions``.

    Raises
    ------
    ConfigError
        two paths name the same file
    """
    parts = [pathlib.Path(p).resolve().with_suffix("").parts[1:] for p in paths]
    depth = [1] * len(parts)
    while True:
        names = ["_".join(p[-d:]) for p, d in zip(parts, depth)]
        clashing = [i for i, name in enumerate(names) if names.count(name) > 1]
        if not clashing:
            return names
        grown = [i for i in clashing if depth[i] < len(parts[i])]
        if not grown:
            raise ConfigError(
                "Cannot tell prediction files apart: {}".format(
                    ", ".join(str(paths[i]) for i in clashing)
                )
            )
        for i in grown:
            depth[i] += 1


def cmd_train(cfg):
    """
    Train a model as described by ``cfg``.

    Writes the config snapshot, ``model.pt`` and ``history.yaml`` to the
    output dir. With a test file, its predictions and report follow.

    Returns
    -------
    (TrainedModel, TrainingHistory)
    """
    if cfg.train_file is None:
        raise ConfigError("No training file given (train_file / --train-file)")
    backend_config = get_backend_config(cfg.backend)

    out = _output_dir(cfg)
    cfg.save(out / SNAPSHOT_NAME)

    corpus = load_corpus(cfg.train_file)
    train_part, val_part = split_corpus(
        corpus, cfg.val_fraction, seed=cfg.seed, stratified=cfg.stratified
    )

    backend = load_backend(backend_config, weights_cache=cfg.weights_cache)
    train_data = encode_corpus(train_part, backend, cfg.max_subwords)
    val_data = encode_corpus(val_part, backend, cfg.max_subwords)

    network = build_model(cfg.model_spec(backend.hidden_size), seed=cfg.seed)
    LOG.info("Model summary:\n%s", format_summary(network))
    model, history = train(network, train_data, val_data, cfg.training_config())
    model.backend = backend

    save_checkpoint(model, out / MODEL_NAME)
    history.save(out / HISTORY_NAME)

    if cfg.test_file is not None:
        test = load_corpus(cfg.test_file)
        tags, _ = predict_words(model, test.words, backend=backend)
        write_corpus(out / TEST_PREDICTIONS_NAME, test.words, tags)
        matrix, report = evaluate(test.tags, tags, scheme=test.scheme)
        _write_report(out, "test", matrix, report)
        print(format_report(report))

    return model, history


def cmd_predict(cfg, checkpoint, input_path, output=None):
    """
    Tag every word of ``input_path``, one ``word<TAB>tag`` line each.

    Returns
    -------
    pathlib.Path
        The predictions file.
    """
    model = load_checkpoint(checkpoint)
    words = read_words(input_path)
    model.embedder(weights_cache=cfg.weights_cache)
    tags, fallbacks = predict_words(model, words)

    if output is None:
        output = _output_dir(cfg) / PREDICTIONS_NAME
    write_corpus(output, words, tags)
    LOG.info("Tagged %d words (%d fallback) into %s", len(words), fallbacks, output)
    return pathlib.Path(output)


def cmd_evaluate(cfg, gold_path, prediction_paths, label_set=PRESENT_IN_GOLD):
    """
    Score prediction files against a gold corpus.

    Each file gets ``<name>_report.yaml``, ``<name>_report.txt`` and
    ``<name>_confusion.png``, where the name comes from :func:`_run_names`;
    two or more files are also ranked into ``leaderboard.yaml``.

    Returns
    -------
    dict
        EvaluationReport by run name.
    """
    gold = load_corpus(gold_path)
    out = _output_dir(cfg)

    reports = {}
    for name, path in zip(_run_names(prediction_paths), prediction_paths):
        pred = load_corpus(path)
        if pred.words != gold.words:
            LOG.warning("Words of %s differ from the gold file", path)
        matrix, report = evaluate(gold.tags, pred.tags, gold.scheme, label_set)
        _write_report(out, name, matrix, report)
        print("== {} ==".format(name))
        print(format_report(report))
        reports[name] = report

    if len(reports) > 1:
        board = rank(reports)
        write_yaml(leaderboard_to_dict(board), out / LEADERBOARD_NAME)
        print(format_leaderboard(board))

    return reports


def cmd_stats(cfg, corpus_path):
    """
    Write the tag distribution of a corpus as YAML and as a bar chart.

    Returns
    -------
    DistributionStats
    """
    corpus = load_corpus(corpus_path)
    stats = compute_distribution(corpus)

    out = _output_dir(cfg)
    stem = pathlib.Path(corpus_path).stem
    write_distribution(stats, out / "{}_distribution.yaml".format(stem))
    plot_distribution(stats, out / "{}_distribution.png".format(stem),
                      title="Tag distribution of {}".format(stem))
    print(format_distribution(stats))
    return stats


def cmd_plot(cfg, history_path):
    """
    Draw ``loss.png`` and ``accuracy.png`` from a saved history.

    Returns
    -------
    dict
        Image path by metric.
    """
    history = TrainingHistory.load(history_path)
    return plot_history(history, _output_dir(cfg))


def do_command(argv=None):
    """
    Fulfill a command provided on the command line. Entrypoint for the
    kenglid console script.

    """
    args = _arg_parse(argv)
    setup_logging(level=logging.DEBUG if args.verbose else logging.INFO)

    try:
        cfg = _resolve(args)
        if args.command == "train":
            cmd_train(cfg)
        elif args.command == "predict":
            cmd_predict(cfg, args.checkpoint, args.input, args.output)
        elif args.command == "evaluate":
            cmd_evaluate(cfg, args.gold, args.predictions, args.label_set)
        elif args.command == "stats":
            cmd_stats(cfg, args.corpus)
        elif args.command == "plot":
            cmd_plot(cfg, args.history)
    except KenglidError as e:
        exit_with_error(e, e.exit_status)


if __name__ == "__main__":
    do_command()
