# -*- coding: utf-8 -*-
"""
Notes and logger decorator to be used on class.
This will add a "notes" object to the class and will allow
logging feature at the same time.

Notes keep a short, timestamped trace of what happened during a
simulation (one entry per round, skipped rounds, files written...) that
can be inspected after a run without parsing the log file.
"""
# --- standard Python modules ---
from collections import namedtuple
from datetime import datetime
import logging
from logging import FileHandler
import sys

import os
from os.path import expanduser, join

# --- 3rd party modules ---
try:
    import pandas as pd

    _PANDAS = True
except ImportError:
    _PANDAS = False

ROOT_LOGGER = "FEELsim_Root"
_MAIN_LOGGER = "{}.FEELsim.scripts.Simulator.Simulator".format(ROOT_LOGGER)

_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
}


class LogList:
    LOGGERS = []


def convert_level(level):
    if not level:
        return None
    if level in _LEVELS.values():
        return level
    try:
        return _LEVELS[level.lower()]
    except (KeyError, AttributeError):
        raise ValueError(
            "Wrong log level use one of the following : {}".format(list(_LEVELS))
        )


def log_directory():
    return os.environ.get("FEELSIM_LOG_DIR", join(expanduser("~"), ".FEELsim"))


def update_log_level(
    level=None, *, log_file=None, stderr=None, stdout=None, log_this=True
):
    """
    Typical usage ::
        # Silence (use CRITICAL so not much messages will be sent)
        FEELsim.log_level('silence')
        # Round by round progress on the console
        FEELsim.log_level('info')
        # Default, Info on console....but Warning in file
        FEELsim.log_level('default')
        # Per UE details in the file, console limited to info
        FEELsim.log_level('debug')
        # OR
        FEELsim.log_level(log_file='debug', stdout='info', stderr='critical')

    Giving only one parameter will set file and console to the same level.
    """
    levels = {}

    if level:
        logging.getLogger(_MAIN_LOGGER).disabled = False
        if level.lower() == "silence":
            levels = {
                "file_handler": logging.CRITICAL,
                "stderr": logging.CRITICAL,
                "stdout": logging.CRITICAL,
            }
            logging.getLogger(_MAIN_LOGGER).disabled = True
        elif level.lower() == "default":
            levels = {
                "file_handler": logging.WARNING,
                "stderr": logging.CRITICAL,
                "stdout": logging.INFO,
            }
        elif level.lower() == "debug":
            levels = {"file_handler": logging.DEBUG, "stdout": logging.INFO}
        else:
            level = convert_level(level)
            levels = {"file_handler": level, "stdout": level}
    else:
        if log_file:
            levels["file_handler"] = convert_level(log_file)
        if stderr:
            levels["stderr"] = convert_level(stderr)
        if stdout:
            levels["stdout"] = convert_level(stdout)

    main_logger = logging.getLogger(_MAIN_LOGGER)
    for each in LogList.LOGGERS:
        for handler in each.handlers:
            new_level = levels.get(handler.get_name())
            if new_level is None:
                continue
            handler.setLevel(new_level)
            if log_this and each is main_logger:
                main_logger.debug(
                    "Changed log level of {} to {}".format(
                        handler.get_name(), logging.getLevelName(new_level)
                    )
                )


def note_and_log(cls):
    """
    This will be used as a decorator on class to activate
    logging and store messages in the variable cls._notes
    A note can be added to cls._notes without logging if passing
    the argument log=False to function note()
    Something can be logged without adding a note using function log()
    """
    if getattr(cls, "DEBUG_LEVEL", None) == "debug":
        file_level = logging.DEBUG
        console_level = logging.DEBUG
    elif getattr(cls, "DEBUG_LEVEL", None) == "info":
        file_level = logging.INFO
        console_level = logging.INFO
    else:
        file_level = logging.WARNING
        console_level = logging.INFO

    # Notes object
    cls._notes = namedtuple("_notes", ["timestamp", "notes"])
    cls._notes.timestamp = []
    cls._notes.notes = []

    # Defining log object
    cls.logname = "{} | {}".format(cls.__module__, cls.__name__)
    cls._log = logging.getLogger(
        "{}.{}.{}".format(ROOT_LOGGER, cls.__module__, cls.__name__)
    )

    # Set level to debug so filter is done by handler
    cls._log.setLevel(logging.DEBUG)
    cls._log.propagate = False

    formatter = logging.Formatter("{asctime} - {levelname:<8}| {message}", style="{")

    # Add handlers the first time only...
    if not len(cls._log.handlers):
        ch = logging.StreamHandler(sys.stderr)
        ch.set_name("stderr")
        ch.setLevel(logging.CRITICAL)
        ch.setFormatter(formatter)

        ch2 = logging.StreamHandler(sys.stdout)
        ch2.set_name("stdout")
        ch2.setLevel(console_level)
        ch2.setFormatter(formatter)

        logSaveFilePath = log_directory()
        try:
            if not os.path.exists(logSaveFilePath):
                os.makedirs(logSaveFilePath)
            fh = FileHandler(join(logSaveFilePath, "FEELsim.log"), delay=True)
            fh.set_name("file_handler")
            fh.setLevel(file_level)
            fh.setFormatter(formatter)
            cls._log.addHandler(fh)
        except OSError:
            # read-only home, console only
            pass
        cls._log.addHandler(ch)
        cls._log.addHandler(ch2)

    LogList.LOGGERS.append(cls._log)

    def log_title(self, title, args=None, width=35):
        cls._log.debug("")
        cls._log.debug("#" * width)
        cls._log.debug("# {}".format(title))
        cls._log.debug("#" * width)
        if args:
            cls._log.debug("{!r}".format(args))
            cls._log.debug("#" * width)

    def log_subtitle(self, subtitle, args=None, width=35):
        cls._log.debug("")
        cls._log.debug("=" * width)
        cls._log.debug("{}".format(subtitle))
        cls._log.debug("=" * width)
        if args:
            cls._log.debug("{!r}".format(args))
            cls._log.debug("=" * width)

    def log(self, note, *, level=logging.DEBUG):
        """
        Add a log entry...no note
        """
        if not note:
            raise ValueError("Provide something to log")
        cls._log.log(level, "{} | {}".format(cls.logname, note))

    def note(self, note, *, level=logging.INFO, log=True):
        """
        Add note to the object. By default, the note will also
        be logged
        :param note: (str) The note itself
        :param level: (logging.level)
        :param log: (boolean) Enable or disable logging of note
        """
        if not note:
            raise ValueError("Provide something to log")
        cls._notes.timestamp.append(datetime.now().astimezone())
        cls._notes.notes.append(note)
        if log:
            self.log(note, level=level)

    @property
    def notes(self):
        """
        Retrieve notes list as a Pandas Series
        """
        if not _PANDAS:
            return dict(zip(self._notes.timestamp, self._notes.notes))
        return pd.Series(self._notes.notes, index=self._notes.timestamp, dtype=object)

    def clear_notes(self):
        """
        Clear notes object
        """
        cls._notes.timestamp = []
        cls._notes.notes = []

    # Add the functions to the decorated class
    cls.clear_notes = clear_notes
    cls.note = note
    cls.notes = notes
    cls.log = log
    cls.log_title = log_title
    cls.log_subtitle = log_subtitle
    return cls
