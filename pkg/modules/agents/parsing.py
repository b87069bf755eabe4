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

""" Reading agent replies: programs, relations, anchor reviews and judge scores. """

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional
import json
import re

from modules.agents.exceptions import NoProgramFound
from modules.anchoring import Anchor, AnchorKind, AnchorSource
from modules.program import Point2D, Program, parse_program
from modules.skeleton import Relation, RelationKind

_FENCE_RE = re.compile(r'```[^\n`]*\n(.*?)```', re.DOTALL)
_STATEMENT_RE = re.compile(r'^\s*canvas\s', re.MULTILINE)


def first_block(text: str) -> Optional[str]:
    """ Body of the first fenced code block, if any. """
    match = _FENCE_RE.search(text or '')
    return match.group(1) if match else None


def parse_agent_program(text: str) -> Program:
    """ The program in an agent reply: the first fenced block, or the whole
    reply when it has none.

    Raises:
        NoProgramFound: the reply has no canvas statement to start from
        ProgramSyntaxError: the code does not parse
    """
    body = first_block(text)
    if body is None:
        body = text or ''
    if not _STATEMENT_RE.search(body):
        raise NoProgramFound(text or '')
    return parse_program(body)


def parse_json_reply(text: str):
    body = first_block(text)
    if body is None:
        body = text or ''
    try:
        return json.loads(body)
    except ValueError:
        raise NoProgramFound(text or '')


def parse_relations(text: str) -> List[Relation]:
    """ Relations proposed by the extraction role; residuals are filled in
    later, when they are checked against the geometry. """
    entries = parse_json_reply(text)
    relations = []
    for entry in entries if isinstance(entries, list) else []:
        try:
            kind = RelationKind(str(entry['kind']).lower())
            operands = tuple(str(op) for op in entry['operands'])
        except (KeyError, TypeError, ValueError):
            continue
        relations.append(Relation(kind, operands, 0.0, 0.0))
    return relations


@dataclass(frozen=True)
class AnchorReview:
    """ Verification verdict: anchor ids to drop, new kinds and added anchors. """
    drop: FrozenSet[str] = frozenset()
    relabel: Dict[str, AnchorKind] = field(default_factory=dict)
    add: List[Anchor] = field(default_factory=list)


def _kind(value) -> Optional[AnchorKind]:
    try:
        return AnchorKind(str(value).lower())
    except ValueError:
        return None


def parse_anchor_review(text: str) -> AnchorReview:
    data = parse_json_reply(text)
    if not isinstance(data, dict):
        return AnchorReview()
    relabel = {}
    for anchor_id, value in (data.get('relabel') or {}).items():
        kind = _kind(value)
        if kind is not None:
            relabel[str(anchor_id)] = kind
    added = []
    for entry in data.get('add') or []:
        try:
            pos = Point2D(float(entry['pos'][0]), float(entry['pos'][1]))
        except (KeyError, IndexError, TypeError, ValueError):
            continue
        added.append(Anchor(pos, 1.0, _kind(entry.get('kind')) or AnchorKind.Unknown,
                            AnchorSource.AgentProposal))
    return AnchorReview(frozenset(str(i) for i in data.get('drop') or []), relabel, added)


@dataclass(frozen=True)
class JudgeScores:
    """ Visual grading on a 0 to 100 scale per criterion. """
    sc: float
    pp: float
    scp: float
    lo: float

    def to_dict(self) -> dict:
        return {'structural_consistency': self.sc, 'point_positioning': self.pp,
                'segment_arc_precision': self.scp, 'layout': self.lo}


def parse_judge(text: str) -> JudgeScores:
    data = parse_json_reply(text)
    if not isinstance(data, dict):
        raise NoProgramFound(text or '')

    def score(key: str) -> float:
        try:
            return min(max(float(data.get(key, 0.0)), 0.0), 100.0)
        except (TypeError, ValueError):
            return 0.0
    return JudgeScores(score('structural_consistency'), score('point_positioning'),
                       score('segment_arc_precision'), score('layout'))
