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

from .exceptions import TransportError, AgentTimeout, CredentialMissing, NoProgramFound
from .types import AgentRole, AgentRequest, AgentResponse, AgentConfig
from .transport import HttpTransport, MockTransport
from .gateway import AgentGateway
from .prompts import load_template, fill, render_prompt
from .parsing import parse_agent_program, parse_relations, parse_anchor_review, parse_judge, \
    AnchorReview, JudgeScores
from .roles import AgentRoles, judge, png_bytes
