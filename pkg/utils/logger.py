###############################################################################
#
# Copyright 2019, University of Stuttgart: Institute for Natural Language Processing (IMS)
#
# This file is part of GeoForge.
# GeoForge is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3.
#
# GeoForge is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with GeoForge.  If not, see <https://www.gnu.org/licenses/>.
#
###############################################################################

""" This module provides a logger for configurable output on different levels. """
from enum import IntEnum
import datetime
import logging
import os
import sys


class LogLevel(IntEnum):
    """ The available levels for the logger. """
    ITERATIONS = 18
    RESULTS = 19
    INFO = 20
    ERRORS = 40
    NONE = 100


for _level in (LogLevel.ITERATIONS, LogLevel.RESULTS, LogLevel.NONE):
    logging.addLevelName(int(_level), _level.name)


class MultilineFormatter(logging.Formatter):
    """ Formats every line of a multi-line message as its own record, so each
    line carries the prefix (and timestamp) of the format. """

    def format(self, record: logging.LogRecord):
        original = record.msg
        try:
            lines = str(original).splitlines() or ['']
            formatted = []
            for line in lines:
                record.msg = line
                formatted.append(super().format(record))
        finally:
            record.msg = original
        record.message = '\n'.join(formatted)
        return record.message


class GeoLogger(logging.Logger):
    """Logger of a reconstruction run.

    Writes to the console at ``console_log_lvl`` and, unless ``file_log_lvl`` is
    ``LogLevel.NONE``, to a timestamped file ``<logfile_basename>_<time>.log``
    inside ``logfile_folder``. Besides the standard levels it offers
    ``iteration`` (one line per loop iteration), ``result`` and
    ``agent_exchange``, the verbatim audit of agent prompts and replies.
    """

    def __init__(self, name: str = 'geoforge', console_log_lvl: LogLevel = LogLevel.ERRORS,
                 file_log_lvl: LogLevel = LogLevel.NONE, logfile_folder: str = 'logs',
                 logfile_basename: str = 'log'): # pylint: disable=too-many-arguments
        super(GeoLogger, self).__init__(name)
        if file_log_lvl is not LogLevel.NONE:
            self.addHandler(self._file_handler(file_log_lvl, logfile_folder, logfile_basename))
        console = logging.StreamHandler()
        console.setLevel(int(console_log_lvl))
        console.setFormatter(MultilineFormatter('geo: %(message)s'))
        self.addHandler(console)
        sys.excepthook = self._log_uncaught

    @staticmethod
    def _file_handler(level: LogLevel, folder: str, basename: str) -> logging.Handler:
        folder = os.path.realpath(folder)
        os.makedirs(folder, exist_ok=True)
        stamp = datetime.datetime.now().strftime('%Y-%m-%d_%H-%M-%S')
        handler = logging.FileHandler(os.path.join(folder, '{}_{}.log'.format(basename, stamp)),
                                      mode='w', encoding='utf-8')
        handler.setLevel(int(level))
        handler.setFormatter(MultilineFormatter('%(asctime)s %(levelname)s %(message)s'))
        return handler

    def _log_uncaught(self, exc_type, exc_value, exc_traceback):
        self.error('uncaught exception', exc_info=(exc_type, exc_value, exc_traceback))

    def result(self, msg: str):
        """ Logs the outcome of a reconstruction. """
        self.log(int(LogLevel.RESULTS), msg)

    def iteration(self, msg: str, report=None):
        """ Logs one iteration of the correction loop, optionally followed by
        the (indented) difference report of that iteration. """
        if report is not None:
            msg += '\n' + '\n'.join('  ' + line for line in str(report).splitlines())
        self.log(int(LogLevel.ITERATIONS), msg)

    def agent_exchange(self, role: str, prompt: str, reply: str):
        self.log(int(LogLevel.ITERATIONS), 'agent {} prompt:\n{}'.format(role, prompt))
        self.log(int(LogLevel.ITERATIONS), 'agent {} reply:\n{}'.format(role, reply))
