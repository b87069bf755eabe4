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

""" Residuals of geometric relations over concrete geometry.

Operands are resolved to geometry before evaluation: a ``Point2D`` for
anchors and point marks, a ``Segment`` for straight strokes and a ``Circle``
or ``Arc`` for round ones. The same functions serve relation mining on the
skeleton and relation scoring on programs.
"""

from typing import Dict, List, Optional, Sequence, Union
import math

import numpy as np

from modules.program import Point2D, Segment, Circle, Arc, Program, PointMark
from modules.skeleton.types import GeoSkeleton, Relation, RelationKind

Geometry = Union[Point2D, Segment, Circle, Arc]


def segment_angle(segment: Segment) -> float:
    """ Undirected direction of a segment in degrees, in [0, 180). """
    angle = math.degrees(math.atan2(segment.p2.y - segment.p1.y, segment.p2.x - segment.p1.x))
    return angle % 180.0


def angle_between(first: Segment, second: Segment) -> float:
    """ Acute angle between two segment directions, in [0, 90]. """
    diff = abs(segment_angle(first) - segment_angle(second)) % 180.0
    return min(diff, 180.0 - diff)


def point_segment_distance(point: Point2D, segment: Segment) -> float:
    px, py = point.x, point.y
    ax, ay, bx, by = segment.p1.x, segment.p1.y, segment.p2.x, segment.p2.y
    dx, dy = bx - ax, by - ay
    norm = dx * dx + dy * dy
    if norm == 0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / norm))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def point_line_distance(point: Point2D, segment: Segment) -> float:
    """ Distance to the infinite line through the segment. """
    dx, dy = segment.p2.x - segment.p1.x, segment.p2.y - segment.p1.y
    norm = math.hypot(dx, dy)
    if norm == 0:
        return point.distance_to(segment.p1)
    return abs(dx * (point.y - segment.p1.y) - dy * (point.x - segment.p1.x)) / norm


def midpoint(segment: Segment) -> Point2D:
    return Point2D((segment.p1.x + segment.p2.x) / 2.0, (segment.p1.y + segment.p2.y) / 2.0)


def collinearity(points: Sequence[Point2D]) -> float:
    """ Largest distance of the points to their total-least-squares line. """
    coords = np.array([[p.x, p.y] for p in points], dtype=np.float64)
    centered = coords - coords.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    normal = vt[-1]
    return float(np.abs(centered @ normal).max())


def _is_round(geometry) -> bool:
    return isinstance(geometry, (Circle, Arc))


def relation_residual(kind: RelationKind, operands: List[Geometry]) -> Optional[float]:
    """ Recomputes the residual of a relation; None when the operand types do
    not fit the kind. """
    if kind is RelationKind.Collinear:
        if len(operands) < 3 or not all(isinstance(op, Point2D) for op in operands):
            return None
        return collinearity(operands)
    if len(operands) != 2:
        return None
    first, second = operands
    if kind in (RelationKind.Parallel, RelationKind.Perpendicular, RelationKind.EqualLength):
        if not (isinstance(first, Segment) and isinstance(second, Segment)):
            return None
        if kind is RelationKind.Parallel:
            return angle_between(first, second)
        if kind is RelationKind.Perpendicular:
            return 90.0 - angle_between(first, second)
        longest = max(first.length(), second.length())
        if longest == 0:
            return None
        return abs(first.length() - second.length()) / longest
    if kind is RelationKind.Midpoint:
        if not (isinstance(first, Point2D) and isinstance(second, Segment)):
            return None
        return first.distance_to(midpoint(second))
    if kind is RelationKind.Incidence:
        if not isinstance(first, Point2D):
            return None
        if isinstance(second, Segment):
            return point_segment_distance(first, second)
        if _is_round(second):
            return abs(first.distance_to(second.center) - second.radius)
        return None
    if kind is RelationKind.Tangent:
        if not (isinstance(first, Segment) and _is_round(second)):
            return None
        return abs(point_line_distance(second.center, first) - second.radius)
    return None


def skeleton_geometry(skeleton: GeoSkeleton) -> Dict[str, Geometry]:
    """ Operand lookup over the skeleton's own anchors and hypotheses. """
    lookup = {anchor.id: anchor.pos for anchor in skeleton.anchors if anchor.id}
    lookup.update({seg.id: seg.shape() for seg in skeleton.segments})
    lookup.update({circle.id: circle.shape() for circle in skeleton.circles})
    return lookup


def program_geometry(program: Program, skeleton: GeoSkeleton) -> Dict[str, Geometry]:
    """ Operand lookup over a program's primitives. Anchors the program does
    not draw keep their skeleton position; fitted primitives the program
    lacks stay unresolved. """
    lookup = {anchor.id: anchor.pos for anchor in skeleton.anchors if anchor.id}
    for prim in program.primitives:
        shape = prim.shape
        if isinstance(shape, PointMark):
            lookup[prim.id] = shape.pos
        elif isinstance(shape, (Segment, Circle, Arc)):
            lookup[prim.id] = shape
    return lookup


def residual_ratio(relation: Relation, lookup: Dict[str, Geometry]) -> float:
    """ Recomputed residual over tolerance; 1.0 when an operand is unresolved. """
    if any(op not in lookup for op in relation.operands):
        return 1.0
    residual = relation_residual(relation.kind, [lookup[op] for op in relation.operands])
    if residual is None or relation.tolerance <= 0:
        return 1.0
    return residual / relation.tolerance
