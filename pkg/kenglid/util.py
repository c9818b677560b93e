# -*- coding: utf-8 -*-
"""
utility functions.

"""

import logging
import os
import sys
import pathlib

from buffering_smtp_handler import BufferingSMTPHandler
import ruamel.yaml

from kenglid.errors import ConfigError, MissingFile

LOG_FORMAT = (
    "%(asctime)s %(levelname)s - %(message)s "
    + "(%(filename)s:%(lineno)s PID %(process)d)"
)

logger = logging.getLogger(__name__)


def exit_with_error(error, exit_status=1):
    """
    Log an error and exit after cleaning up logging.

    Parameters
    ----------
    error : string or Exception
        error message
    exit_status : int
        exit status return to shell

    Examples
    --------
    >>> from kenglid.util import *
    >>> setup_logging()
    2022-11-04 01:13:36,086 INFO - SMTP logging not configured. (util.py:111)
    >>> exit_with_error("Just testing", 3)
    2022-11-04 01:13:47,271 ERROR - Just testing (util.py:44)

    """

    try:
        logger.error(error)
        logging.shutdown()
    finally:
        print(error, file=sys.stderr)

    sys.exit(exit_status)


def get_env_var(var, default=None, secret=False):
    """
    Retrieve an environment variable. A default may be supplied and will be
    returned if the requested variable is not set. If no default is provided,
    an unset environment variable is a configuration error.

    Parameters
    ----------
    var : string
        variable to find
    default : string, optional
        default returned if variable is unset
    secret : boolean, optional
        if true, do not log value.

    Returns
    -------
    str
        environment variable

    Raises
    ------
    ConfigError
        variable is unset and no default was given

    Examples
    --------
    >>> get_env_var("KENGLID_WEIGHTS_CACHE", default="close enough")
    2022-11-04 01:18:44,863 DEBUG - KENGLID_WEIGHTS_CACHE: close enough (default)
    'close enough'

    """
    if var in os.environ:
        if not secret:
            logger.debug("%s: %s", var, os.environ[var])
        return os.environ[var]

    if default is None:
        raise ConfigError("Environment variable {} not set.".format(var))

    if not secret:
        logger.debug("%s: %s (default)", var, default)
    return default


def setup_logging(subject="kenglid error logs", level=logging.INFO):
    """
    Setup logging the way I like it. If the following environment variables are
    provided, an email with error level logs will be sent.

    * MAILHOST : where to email logs
    * LOG_SENDER: From: address
    * LOG_RECIPIENT: To: address

    Parameters
    ----------
    subject : string, optional
        subject used if email is generated
    level : int, optional
        level of the console handler

    Returns
    -------
    logging.Logger
        The root logger.

    """
    root = logging.getLogger("")
    root.setLevel(level)

    ch = logging.StreamHandler()
    ch.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(ch)

    try:
        handler = BufferingSMTPHandler(
            os.environ["MAILHOST"],
            os.environ["LOG_SENDER"],
            os.environ["LOG_RECIPIENT"].split(","),
            subject,
            1000,
            LOG_FORMAT,
        )
        handler.setLevel(logging.ERROR)
        root.addHandler(handler)
        logger.info("SMTP configured, will send email.")
    except KeyError:
        logger.debug("SMTP logging not configured.")

    return root


def parse_config(config_path):
    """
    Parse a local YAML config file.

    Parameters
    ----------
    config_path : string
        config file path

    Returns
    -------
    dict
        Top-level mapping of the file; empty if the file is empty.

    Raises
    ------
    MissingFile
        config_path does not exist
    ConfigError
        file is not YAML or its top level is not a mapping

    """
    logger.debug("Parsing config %s", config_path)
    config_file = pathlib.Path(config_path)
    if not config_file.is_file():
        raise MissingFile(config_file)

    yaml = ruamel.yaml.YAML(typ="safe")
    try:
        config = yaml.load(config_file)
    except ruamel.yaml.YAMLError as e:
        raise ConfigError("Cannot parse config file {}: {}".format(config_file, e))

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigError("Config file {} is not a mapping.".format(config_file))
    return dict(config)


def write_yaml(data, path):
    """
    Write plain data as block-style YAML.

    Parameters
    ----------
    data : dict or list
        Plain python data.
    path : str or pathlib.Path
        Destination file, parent directories are created.

    """
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    yaml = ruamel.yaml.YAML(typ="safe", pure=True)
    yaml.default_flow_style = False
    with open(path, "w", encoding="utf-8") as f:
        yaml.dump(data, f)
    logger.debug("Wrote %s", path)


def read_yaml(path):
    """
    Read a YAML file written by :func:`write_yaml`.

    Returns
    -------
    object
        Parsed content.

    Raises
    ------
    MissingFile
        path does not exist
    ruamel.yaml.YAMLError
        the file is not YAML

    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise MissingFile(path)
    yaml = ruamel.yaml.YAML(typ="safe")
    return yaml.load(path)
