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

""" Base exceptions shared by all modules.

Every error raised by a module carries the name of the failing module and the
process exit code the command line surface reports for it.
"""


class GeoError(Exception):
    """ Base class of all errors raised by GeoForge modules.

    Args:
        message (str): human readable description
        module (str): name of the module the error originates from
    """
    exit_code = 1

    def __init__(self, message: str, module: str = 'geoforge'):
        Exception.__init__(self, message)
        self.message = message
        self.module = module


class DomainError(GeoError):
    """ Invalid domain input (syntax errors, dimension mismatch, bad files). """
    exit_code = 1


class UsageError(GeoError):
    """ Invalid invocation (unknown flags or configuration keys). """
    exit_code = 2


class AgentError(GeoError):
    """ Failure while talking to a remote agent. """
    exit_code = 3
