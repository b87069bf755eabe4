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

""" Requests, replies and endpoint settings of the agent gateway. """

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Tuple
import hashlib
import os

MAX_IMAGES = 4
MAX_IMAGE_BYTES = 8 * 1024 * 1024

ENDPOINT_VAR = 'GEO_AGENT_ENDPOINT'
KEY_VAR = 'GEO_AGENT_KEY'
MODEL_VAR = 'GEO_AGENT_MODEL'
TIMEOUT_VAR = 'GEO_AGENT_TIMEOUT'


class AgentRole(Enum):
    Extract = 'extract'
    Verify = 'verify'
    Generate = 'generate'
    Refine = 'refine'
    Judge = 'judge'


@dataclass(frozen=True)
class AgentRequest:
    """ One prompt for one role, with up to four PNG attachments. """
    role: AgentRole
    prompt: str
    images: Tuple[bytes, ...] = ()
    max_tokens: int = 2048
    temperature: float = 0.0

    def __post_init__(self):
        if not self.prompt:
            raise ValueError('agent prompt must not be empty')
        if len(self.images) > MAX_IMAGES:
            raise ValueError('at most {} images per request'.format(MAX_IMAGES))
        if any(len(image) > MAX_IMAGE_BYTES for image in self.images):
            raise ValueError('images are limited to 8 MiB')

    def digest(self) -> str:
        """ Stable hash of role, prompt and attachments (used by scripted replies). """
        sha = hashlib.sha256()
        sha.update(self.role.value.encode('utf-8'))
        sha.update(b'\0')
        sha.update(self.prompt.encode('utf-8'))
        for image in self.images:
            sha.update(b'\0')
            sha.update(hashlib.sha256(image).digest())
        return sha.hexdigest()


@dataclass(frozen=True)
class AgentResponse:
    text: str
    usage: Dict[str, int] = field(default_factory=dict)
    latency_ms: int = 0


@dataclass(frozen=True)
class AgentConfig:
    """ Endpoint settings; ``backoff`` lists the waits before each retry. """
    endpoint: str = None
    key: str = None
    model: str = None
    timeout: float = 60.0
    backoff: Tuple[float, ...] = (1.0, 2.0, 4.0)
    max_in_flight: int = 4
    max_tokens: int = 2048

    @classmethod
    def from_env(cls, environ: Mapping[str, str] = None, **overrides) -> 'AgentConfig':
        environ = os.environ if environ is None else environ
        values = {'endpoint': environ.get(ENDPOINT_VAR), 'key': environ.get(KEY_VAR),
                  'model': environ.get(MODEL_VAR)}
        if environ.get(TIMEOUT_VAR):
            values['timeout'] = float(environ[TIMEOUT_VAR])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
