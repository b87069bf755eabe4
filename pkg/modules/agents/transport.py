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

""" Wire transports of the agent gateway: HTTP against a chat-completions
endpoint, and a scripted mock that never touches the network. """

from typing import Iterable, List, Tuple
import json

import requests

from modules.agents.types import AgentConfig, AgentRequest


class HttpTransport(object):
    """ Posts chat-completions JSON with a bearer key. """
    requires_credentials = True

    def __init__(self, session: requests.Session = None):
        self.session = session or requests.Session()

    def send(self, request: AgentRequest, payload: dict, cfg: AgentConfig) -> Tuple[int, str]:
        """ Returns (status, body); raises requests.Timeout / ConnectionError. """
        response = self.session.post(cfg.endpoint, json=payload, timeout=cfg.timeout,
                                     headers={'Authorization': 'Bearer {}'.format(cfg.key)})
        return response.status_code, response.text


def completion_body(text: str) -> str:
    """ A minimal chat-completions reply carrying ``text``. """
    return json.dumps({'choices': [{'message': {'role': 'assistant', 'content': text}}],
                       'usage': {'prompt_tokens': 0, 'completion_tokens': len(text.split())}})


class MockTransport(object):
    """ Replays scripted replies.

    Each script entry is a dict: ``{"reply": text}`` answers the next request in
    sequence, ``{"hash": digest, "reply": text}`` answers the request with that
    digest whenever it comes, ``{"status": 500, "body": text}`` fails the next
    request and ``{"timeout": true}`` lets it time out.
    """
    requires_credentials = False

    def __init__(self, entries: Iterable[dict] = ()):
        self.by_hash = {}
        self.sequence = []
        for entry in entries:
            if 'hash' in entry:
                self.by_hash[entry['hash']] = entry
            else:
                self.sequence.append(entry)
        self.requests = []

    @classmethod
    def from_jsonl(cls, path: str) -> 'MockTransport':
        with open(path, 'r', encoding='utf-8') as script:
            return cls(json.loads(line) for line in script if line.strip())

    @property
    def calls(self) -> int:
        return len(self.requests)

    def send(self, request: AgentRequest, payload: dict, cfg: AgentConfig) -> Tuple[int, str]:
        self.requests.append(request)
        entry = self.by_hash.get(request.digest())
        if entry is None:
            if not self.sequence:
                return 503, 'mock script exhausted'
            entry = self.sequence.pop(0)
        if entry.get('timeout'):
            raise requests.Timeout('scripted timeout')
        if 'status' in entry and int(entry['status']) != 200:
            return int(entry['status']), entry.get('body', '')
        return 200, completion_body(entry.get('reply', ''))

    def pending(self) -> List[dict]:
        return list(self.sequence)
