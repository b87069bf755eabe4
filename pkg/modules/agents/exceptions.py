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

from utils.exceptions import AgentError


class TransportError(AgentError):
    """ The agent endpoint answered with a non-success status. """

    def __init__(self, status: int, body: str):
        AgentError.__init__(self, 'endpoint returned {}: {}'.format(status, body[:200]),
                            module='agents')
        self.status = status
        self.body = body


class AgentTimeout(AgentError):
    def __init__(self, seconds: float):
        AgentError.__init__(self, 'no reply within {:g} s'.format(seconds), module='agents')
        self.seconds = seconds


class CredentialMissing(AgentError):
    def __init__(self, variable: str):
        AgentError.__init__(self, 'environment variable {} is not set'.format(variable),
                            module='agents')
        self.variable = variable


class NoProgramFound(AgentError):
    """ An agent reply holds nothing that could be read as a program or JSON document. """

    def __init__(self, excerpt: str):
        AgentError.__init__(self, 'no program in reply: {!r}'.format(excerpt[:80]),
                            module='agents')
        self.excerpt = excerpt
