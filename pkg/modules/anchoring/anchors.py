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

""" Anchor value types and the configuration of the anchoring operators. """

from dataclasses import dataclass
from enum import Enum
from typing import List

from modules.program import Point2D


class AnchorKind(Enum):
    """ What kind of feature point an anchor marks. """
    Corner = 'corner'
    Junction = 'junction'
    Endpoint = 'endpoint'
    Unknown = 'unknown'


class AnchorSource(Enum):
    """ Who proposed an anchor. """
    GradientOperator = 'gradient_operator'
    AgentProposal = 'agent_proposal'


# higher wins when anchors of different kinds are merged
KIND_PRIORITY = {
    AnchorKind.Junction: 3,
    AnchorKind.Corner: 2,
    AnchorKind.Endpoint: 1,
    AnchorKind.Unknown: 0,
}


@dataclass(frozen=True)
class Anchor:
    """ A grounded keypoint candidate. ``id`` is assigned once the anchor has
    been verified (``P1``, ``P2``, ...). """
    pos: Point2D
    score: float
    kind: AnchorKind = AnchorKind.Unknown
    source: AnchorSource = AnchorSource.GradientOperator
    id: str = None

    def to_dict(self) -> dict:
        entry = {'x': round(self.pos.x, 2), 'y': round(self.pos.y, 2),
                 'score': round(self.score, 6), 'kind': self.kind.value,
                 'source': self.source.value}
        if self.id is not None:
            entry['id'] = self.id
        return entry

    @classmethod
    def from_dict(cls, entry: dict) -> 'Anchor':
        return cls(pos=Point2D(float(entry['x']), float(entry['y'])),
                   score=float(entry.get('score', 1.0)),
                   kind=AnchorKind(entry.get('kind', AnchorKind.Unknown.value)),
                   source=AnchorSource(entry.get('source',
                                                 AnchorSource.GradientOperator.value)),
                   id=entry.get('id'))


def anchors_to_json(anchors: List[Anchor]) -> List[dict]:
    return [anchor.to_dict() for anchor in anchors]


def anchors_from_json(entries: List[dict]) -> List[Anchor]:
    return [Anchor.from_dict(entry) for entry in entries]


@dataclass(frozen=True)
class AnchorConfig:
    """ Parameters of the anchoring operators.

    Args:
        edge_threshold (int): luma below which a pixel is ink
        harris_k (float): sensitivity constant of the corner response
        harris_window (int): side of the structure-tensor summation window
        harris_sigma (float): gaussian pre-smoothing of the edge mask
        nms_radius (float): minimal distance between two anchors of one kind
        relative_threshold (float): corner responses below this fraction of the
                                    image maximum are discarded
        junction_radius (float): junction pixels closer than this form one anchor
        merge_radius (float): anchors closer than this are deduplicated
    """
    edge_threshold: int = 200
    harris_k: float = 0.04
    harris_window: int = 3
    harris_sigma: float = 1.0
    nms_radius: float = 5.0
    relative_threshold: float = 0.01
    junction_radius: float = 5.0
    merge_radius: float = 4.0


def sort_anchors(anchors: List[Anchor]) -> List[Anchor]:
    """ Stable (y, x) ordering used for every anchor list. """
    return sorted(anchors, key=lambda a: (a.pos.y, a.pos.x, -KIND_PRIORITY[a.kind]))


def deduplicate(anchors: List[Anchor], radius: float) -> List[Anchor]:
    """ Keeps one anchor per neighbourhood of ``radius``: junctions beat corners
    beat endpoints, then the higher score wins. Kept anchors are more than
    ``radius`` apart. """
    ranked = sorted(anchors, key=lambda a: (-KIND_PRIORITY[a.kind], -a.score, a.pos.y, a.pos.x))
    kept = []
    for anchor in ranked:
        if all(anchor.pos.distance_to(other.pos) > radius for other in kept):
            kept.append(anchor)
    return sort_anchors(kept)
