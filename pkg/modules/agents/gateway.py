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

""" Chat-completion gateway shared by all agent roles. """

from typing import Callable
import base64
import json
import threading
import time

import requests

from modules.agents.exceptions import AgentTimeout, CredentialMissing, TransportError
from modules.agents.transport import HttpTransport
from modules.agents.types import AgentConfig, AgentRequest, AgentResponse, ENDPOINT_VAR, \
    KEY_VAR
from utils.logger import GeoLogger


def chat_payload(request: AgentRequest, cfg: AgentConfig) -> dict:
    content = [{'type': 'text', 'text': request.prompt}]
    for image in request.images:
        content.append({'type': 'image_url', 'image_url': {
            'url': 'data:image/png;base64,' + base64.b64encode(image).decode('ascii')}})
    payload = {'messages': [{'role': 'user', 'content': content}],
               'max_tokens': request.max_tokens, 'temperature': request.temperature}
    if cfg.model:
        payload['model'] = cfg.model
    return payload


def _retryable(status: int) -> bool:
    return status == 429 or status >= 500


class AgentGateway(object):
    """ Sends agent requests with retries and a cap on requests in flight.

    Every request gets one attempt plus one retry per ``backoff`` entry, waiting
    that many seconds first. Server errors, rate limits, timeouts and broken
    connections are retried; other failures are raised at once.

    Args:
        cfg (AgentConfig): endpoint settings
        transport: HttpTransport by default; a MockTransport keeps everything offline
        logger (GeoLogger): receives the verbatim prompt and reply of
                            temperature-0 requests
        sleep (Callable): waits between attempts
    """

    def __init__(self, cfg: AgentConfig = AgentConfig(), transport=None,
                 logger: GeoLogger = GeoLogger(), sleep: Callable[[float], None] = time.sleep):
        self.cfg = cfg
        self.transport = transport if transport is not None else HttpTransport()
        self.logger = logger
        self.sleep = sleep
        self._slots = threading.BoundedSemaphore(max(1, cfg.max_in_flight))

    def check_credentials(self):
        if not getattr(self.transport, 'requires_credentials', True):
            return
        if not self.cfg.endpoint:
            raise CredentialMissing(ENDPOINT_VAR)
        if not self.cfg.key:
            raise CredentialMissing(KEY_VAR)

    def _attempt(self, request: AgentRequest, payload: dict):
        try:
            return self.transport.send(request, payload, self.cfg), None
        except requests.Timeout:
            return None, AgentTimeout(self.cfg.timeout)
        except requests.ConnectionError as err:
            return None, TransportError(0, str(err))

    def complete(self, request: AgentRequest) -> AgentResponse:
        """ One request/response exchange.

        Raises:
            CredentialMissing: endpoint or key unset (before any network activity)
            TransportError: non-retryable status, or retries exhausted
            AgentTimeout: the last attempt timed out
        """
        self.check_credentials()
        payload = chat_payload(request, self.cfg)
        started = time.monotonic()
        error = None
        with self._slots:
            for attempt in range(len(self.cfg.backoff) + 1):
                if attempt > 0:
                    self.sleep(self.cfg.backoff[attempt - 1])
                result, error = self._attempt(request, payload)
                if result is None:
                    continue
                status, body = result
                if status == 200:
                    response = self._parse(body, started)
                    if request.temperature == 0:
                        self.logger.agent_exchange(request.role.value, request.prompt,
                                                   response.text)
                    return response
                error = TransportError(status, body)
                if not _retryable(status):
                    break
        raise error

    @staticmethod
    def _parse(body: str, started: float) -> AgentResponse:
        try:
            data = json.loads(body)
            text = data['choices'][0]['message']['content']
        except (ValueError, KeyError, IndexError, TypeError):
            raise TransportError(200, body)
        if isinstance(text, list):
            text = ''.join(part.get('text', '') for part in text if isinstance(part, dict))
        usage = {k: int(v) for k, v in (data.get('usage') or {}).items()
                 if isinstance(v, (int, float))}
        return AgentResponse(text or '', usage, int((time.monotonic() - started) * 1000))
