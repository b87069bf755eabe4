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

""" Value types of the geometric skeleton: fitted hypotheses, relations and
the skeleton itself, with their JSON form. """

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple
import json

from modules.anchoring import Anchor, anchors_to_json, anchors_from_json
from modules.program import Point2D, Segment, Circle

SCHEMA_VERSION = 1


class RelationKind(Enum):
    Parallel = 'parallel'
    Perpendicular = 'perpendicular'
    Midpoint = 'midpoint'
    Incidence = 'incidence'
    Collinear = 'collinear'
    Tangent = 'tangent'
    EqualLength = 'equal_length'


# number of operands per kind; None means "three or more"
ARITY = {
    RelationKind.Parallel: 2,
    RelationKind.Perpendicular: 2,
    RelationKind.EqualLength: 2,
    RelationKind.Midpoint: 2,
    RelationKind.Incidence: 2,
    RelationKind.Tangent: 2,
    RelationKind.Collinear: None,
}

SYMMETRIC_KINDS = (RelationKind.Parallel, RelationKind.Perpendicular, RelationKind.EqualLength,
                   RelationKind.Collinear)


@dataclass(frozen=True)
class Relation:
    """ A geometric relation between anchors and fitted primitives.

    ``residual`` is in degrees for angular kinds, pixels for metric kinds and a
    relative difference for EqualLength; it never exceeds ``tolerance``.
    """
    kind: RelationKind
    operands: Tuple[str, ...]
    residual: float
    tolerance: float

    def key(self) -> tuple:
        """ Identity used for deduplication. """
        operands = tuple(sorted(self.operands)) if self.kind in SYMMETRIC_KINDS \
            else self.operands
        return (self.kind, operands)

    def arity_ok(self) -> bool:
        arity = ARITY[self.kind]
        return len(self.operands) >= 3 if arity is None else len(self.operands) == arity

    def to_dict(self) -> dict:
        return {'kind': self.kind.value, 'operands': list(self.operands),
                'residual': round(self.residual, 6), 'tolerance': self.tolerance}

    @classmethod
    def from_dict(cls, entry: dict) -> 'Relation':
        return cls(RelationKind(entry['kind']), tuple(entry['operands']),
                   float(entry.get('residual', 0.0)), float(entry.get('tolerance', 0.0)))


@dataclass(frozen=True)
class SegmentHypothesis:
    """ A fitted straight stroke. """
    id: str
    p1: Point2D
    p2: Point2D
    inliers: int
    residual: float = 0.0

    def shape(self) -> Segment:
        return Segment(self.p1, self.p2)

    def length(self) -> float:
        return self.p1.distance_to(self.p2)

    def to_dict(self) -> dict:
        return {'id': self.id, 'p1': [round(self.p1.x, 2), round(self.p1.y, 2)],
                'p2': [round(self.p2.x, 2), round(self.p2.y, 2)], 'inliers': self.inliers,
                'residual': round(self.residual, 6)}

    @classmethod
    def from_dict(cls, entry: dict) -> 'SegmentHypothesis':
        return cls(entry['id'], Point2D(*map(float, entry['p1'])),
                   Point2D(*map(float, entry['p2'])), int(entry['inliers']),
                   float(entry.get('residual', 0.0)))


@dataclass(frozen=True)
class CircleHypothesis:
    """ A fitted circle; start/end angles (counter-clockwise, y up) are set
    when only part of the circle is drawn. """
    id: str
    center: Point2D
    radius: float
    inliers: int
    residual: float = 0.0
    start_deg: Optional[float] = None
    end_deg: Optional[float] = None

    @property
    def is_partial(self) -> bool:
        return self.start_deg is not None

    def shape(self) -> Circle:
        return Circle(self.center, self.radius)

    def to_dict(self) -> dict:
        return {'id': self.id, 'center': [round(self.center.x, 2), round(self.center.y, 2)],
                'radius': round(self.radius, 2), 'inliers': self.inliers,
                'residual': round(self.residual, 6),
                'start_deg': None if self.start_deg is None else round(self.start_deg, 2),
                'end_deg': None if self.end_deg is None else round(self.end_deg, 2)}

    @classmethod
    def from_dict(cls, entry: dict) -> 'CircleHypothesis':
        start, end = entry.get('start_deg'), entry.get('end_deg')
        return cls(entry['id'], Point2D(*map(float, entry['center'])), float(entry['radius']),
                   int(entry['inliers']), float(entry.get('residual', 0.0)),
                   None if start is None else float(start), None if end is None else float(end))


@dataclass(frozen=True)
class FittedPrimitives:
    segments: Tuple[SegmentHypothesis, ...] = ()
    circles: Tuple[CircleHypothesis, ...] = ()

    def __len__(self):
        return len(self.segments) + len(self.circles)


@dataclass(frozen=True)
class GeoSkeleton:
    """ Verified anchors plus fitted primitives and the relations among them. """
    anchors: Tuple[Anchor, ...] = ()
    segments: Tuple[SegmentHypothesis, ...] = ()
    circles: Tuple[CircleHypothesis, ...] = ()
    relations: Tuple[Relation, ...] = ()
    text: Optional[str] = None
    stroke_width: float = 2.0
    schema_version: int = field(default=SCHEMA_VERSION)

    def is_empty(self) -> bool:
        return not (self.anchors or self.segments or self.circles)

    def ids(self) -> List[str]:
        return [a.id for a in self.anchors] + [s.id for s in self.segments] + \
            [c.id for c in self.circles]

    def anchor(self, anchor_id: str) -> Optional[Anchor]:
        for anchor in self.anchors:
            if anchor.id == anchor_id:
                return anchor
        return None

    def to_dict(self) -> dict:
        return {'schema_version': self.schema_version,
                'stroke_width': round(self.stroke_width, 2),
                'anchors': anchors_to_json(self.anchors),
                'segments': [s.to_dict() for s in self.segments],
                'circles': [c.to_dict() for c in self.circles],
                'relations': [r.to_dict() for r in self.relations],
                'text': self.text}

    def to_json(self, indent: int = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, entry: dict) -> 'GeoSkeleton':
        version = entry.get('schema_version', SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ValueError('unsupported skeleton schema_version {}'.format(version))
        return cls(anchors=tuple(anchors_from_json(entry.get('anchors', []))),
                   segments=tuple(SegmentHypothesis.from_dict(s)
                                  for s in entry.get('segments', [])),
                   circles=tuple(CircleHypothesis.from_dict(c) for c in entry.get('circles', [])),
                   relations=tuple(Relation.from_dict(r) for r in entry.get('relations', [])),
                   text=entry.get('text'),
                   stroke_width=float(entry.get('stroke_width', 2.0)))

    @classmethod
    def from_json(cls, text: str) -> 'GeoSkeleton':
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SkeletonConfig:
    """ Tolerances of anchor verification, primitive fitting and relation mining.

    Angular tolerances are degrees, metric ones pixels, ``length_tolerance``
    is relative.
    """
    verify_radius: float = 2.0
    merge_radius: float = 4.0
    line_tolerance: float = 1.5
    circle_tolerance: float = 1.5
    min_branch_length: int = 6
    min_circle_radius: float = 8.0
    min_arc_coverage: float = 20.0
    full_circle_coverage: float = 345.0
    circle_merge_distance: float = 3.0
    overlap_distance: float = 3.0
    collinear_gap: float = 10.0
    junction_radius: float = 5.0
    angle_tolerance: float = 2.0
    distance_tolerance: float = 3.0
    collinear_tolerance: float = 1.5
    tangent_tolerance: float = 3.0
    length_tolerance: float = 0.02

    def tolerance(self, kind: RelationKind) -> float:
        return {
            RelationKind.Parallel: self.angle_tolerance,
            RelationKind.Perpendicular: self.angle_tolerance,
            RelationKind.Midpoint: self.distance_tolerance,
            RelationKind.Incidence: self.distance_tolerance,
            RelationKind.Collinear: self.collinear_tolerance,
            RelationKind.Tangent: self.tangent_tolerance,
            RelationKind.EqualLength: self.length_tolerance,
        }[kind]
