# -*- coding: utf-8 -*-
"""
Exceptions raised by kenglid.

Every error a command can run into is a subclass of :class:`KenglidError`.
The console maps ``exit_status`` straight to the process exit code, so the
numbers below are part of the command line contract and must not be reused.

"""


class KenglidError(Exception):
    """Base class for all kenglid errors."""

    exit_status = 1


class ConfigError(KenglidError):
    exit_status = 2


class MissingFile(KenglidError):
    exit_status = 3

    def __init__(self, path):
        self.path = str(path)
        super().__init__("File not found: {}".format(self.path))


class MalformedLine(KenglidError):
    exit_status = 4

    def __init__(self, path, line_no, detail):
        self.path = str(path)
        self.line_no = line_no
        super().__init__("{}:{}: {}".format(self.path, line_no, detail))


class UnknownTag(KenglidError):
    exit_status = 5

    def __init__(self, text, line_no=None, path=None):
        self.text = text
        self.line_no = line_no
        self.path = None if path is None else str(path)
        if line_no is None:
            msg = "Unknown tag {!r}".format(text)
        else:
            msg = "{}:{}: unknown tag {!r}".format(self.path, line_no, text)
        super().__init__(msg)


class EmptyCorpus(KenglidError):
    exit_status = 6


class StratumTooSmall(KenglidError):
    exit_status = 7

    def __init__(self, tag, size):
        self.tag = tag
        self.size = size
        super().__init__(
            "Stratum {!r} has {} item(s), too few to give both a training "
            "and a validation item.".format(tag, size)
        )


class UnknownBackend(KenglidError):
    exit_status = 8

    def __init__(self, name):
        self.name = name
        super().__init__("Unknown embedding backend {!r}".format(name))


class WeightsUnavailable(KenglidError):
    exit_status = 9


class EmbeddingError(KenglidError):
    """A word or batch the embedder refuses."""

    exit_status = 10


class EmptyWord(EmbeddingError):
    exit_status = 10


class EmptyBatch(EmbeddingError):
    exit_status = 20


class InvalidSpec(KenglidError):
    exit_status = 11


class EmptyDataset(KenglidError):
    exit_status = 12


class NonFiniteLoss(KenglidError):
    exit_status = 13

    def __init__(self, epoch, loss):
        self.epoch = epoch
        self.loss = loss
        super().__init__(
            "Loss became {} during epoch {}, training aborted.".format(loss, epoch)
        )


class BackendMismatch(KenglidError):
    exit_status = 14


class CorruptCheckpoint(KenglidError):
    exit_status = 15


class SchemeMismatch(KenglidError):
    exit_status = 16


class LengthMismatch(KenglidError):
    exit_status = 17

    def __init__(self, gold_len, pred_len):
        self.gold_len = gold_len
        self.pred_len = pred_len
        super().__init__(
            "Gold has {} tokens but predictions have {}.".format(gold_len, pred_len)
        )


class EmptyMatrix(KenglidError):
    exit_status = 18


class MalformedHistory(KenglidError):
    exit_status = 19
