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

""" This module provides the value types of the geometry program: points, styles,
primitives and the program itself. All of them are immutable once constructed. """

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, List, Optional, Tuple
import math


@dataclass(frozen=True)
class Point2D:
    """ A point in canvas pixels, origin top-left, y increasing downward. """
    x: float
    y: float

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)

    def distance_to(self, other: 'Point2D') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def translated(self, dx: float, dy: float) -> 'Point2D':
        return Point2D(self.x + dx, self.y + dy)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


class DashStyle(Enum):
    """ Stroke pattern of a primitive. """
    Solid = 'solid'
    Dashed = 'dashed'


@dataclass(frozen=True)
class Style:
    """ Drawing attributes; a style statement applies to all subsequent statements.

    Strokes are stamped with a disc of radius (stroke_width - 1) / 2, so the
    drawn width is always odd: 1.0 and the default 2.0 both draw one pixel,
    3.0 draws three.
    """
    stroke_width: float = 2.0
    color: Tuple[int, int, int] = (0, 0, 0)
    dash: DashStyle = DashStyle.Solid


DEFAULT_STYLE = Style()


def normalize_angle(degrees: float) -> float:
    """ Maps an angle in degrees to [0, 360). """
    value = math.fmod(degrees, 360.0)
    if value < 0.0:
        value += 360.0
    if value >= 360.0:
        value = 0.0
    return value


def direction(degrees: float) -> Tuple[float, float]:
    """ Unit vector of an angle given counter-clockwise with y pointing up. """
    rad = math.radians(degrees)
    return (math.cos(rad), -math.sin(rad))


class PrimitiveKind(Enum):
    """ The variants a primitive can take; values are the DSL keywords. """
    PointMark = 'point'
    Segment = 'segment'
    Circle = 'circle'
    Arc = 'arc'
    Polyline = 'polyline'
    Label = 'label'
    RightAngleMark = 'rightangle'
    TickMark = 'tick'


class Shape:
    """ Common interface of the primitive variants.

    Every shape exposes its control points so that generic code (attribution,
    coordinate fine-tuning) can move it without knowing the variant.
    """
    kind: PrimitiveKind = None

    def control_points(self) -> List[Point2D]:
        raise NotImplementedError

    def with_control_points(self, points: List[Point2D]) -> 'Shape':
        raise NotImplementedError

    def translated(self, dx: float, dy: float) -> 'Shape':
        return self.with_control_points([p.translated(dx, dy) for p in self.control_points()])


@dataclass(frozen=True)
class PointMark(Shape):
    pos: Point2D
    kind = PrimitiveKind.PointMark

    def control_points(self):
        return [self.pos]

    def with_control_points(self, points):
        return PointMark(points[0])


@dataclass(frozen=True)
class Segment(Shape):
    p1: Point2D
    p2: Point2D
    kind = PrimitiveKind.Segment

    def control_points(self):
        return [self.p1, self.p2]

    def with_control_points(self, points):
        return Segment(points[0], points[1])

    def length(self) -> float:
        return self.p1.distance_to(self.p2)


@dataclass(frozen=True)
class Circle(Shape):
    center: Point2D
    radius: float
    kind = PrimitiveKind.Circle

    def control_points(self):
        return [self.center]

    def with_control_points(self, points):
        return Circle(points[0], self.radius)


@dataclass(frozen=True)
class Arc(Shape):
    """ Arc running counter-clockwise (y up) from start_deg to end_deg. """
    center: Point2D
    radius: float
    start_deg: float
    end_deg: float
    kind = PrimitiveKind.Arc

    def control_points(self):
        return [self.center]

    def with_control_points(self, points):
        return replace(self, center=points[0])


@dataclass(frozen=True)
class Polyline(Shape):
    points: Tuple[Point2D, ...]
    kind = PrimitiveKind.Polyline

    def control_points(self):
        return list(self.points)

    def with_control_points(self, points):
        return Polyline(tuple(points))


@dataclass(frozen=True)
class Label(Shape):
    """ Plain text drawn with its top-left corner at anchor + offset. """
    text: str
    anchor: Point2D
    offset: Point2D = Point2D(0.0, 0.0)
    kind = PrimitiveKind.Label

    def control_points(self):
        return [self.anchor]

    def with_control_points(self, points):
        return replace(self, anchor=points[0])


@dataclass(frozen=True)
class RightAngleMark(Shape):
    vertex: Point2D
    arm1_deg: float
    arm2_deg: float
    size: float
    kind = PrimitiveKind.RightAngleMark

    def control_points(self):
        return [self.vertex]

    def with_control_points(self, points):
        return replace(self, vertex=points[0])


@dataclass(frozen=True)
class TickMark(Shape):
    """ Short stroke across a segment at its midpoint; direction is the marked segment's. """
    midpoint: Point2D
    direction_deg: float
    kind = PrimitiveKind.TickMark

    def control_points(self):
        return [self.midpoint]

    def with_control_points(self, points):
        return replace(self, midpoint=points[0])


@dataclass(frozen=True)
class Primitive:
    """ One statement of the program: an id, a shape variant and its style. """
    id: str
    shape: Shape
    style: Style = DEFAULT_STYLE

    @property
    def kind(self) -> PrimitiveKind:
        return self.shape.kind

    def with_shape(self, shape: Shape) -> 'Primitive':
        return replace(self, shape=shape)

    def with_style(self, style: Style) -> 'Primitive':
        return replace(self, style=style)


@dataclass(frozen=True)
class Program:
    """ The executable geometric code: canvas, ordered primitives (draw order is
    z-order) and the default style. """
    width: int = 1000
    height: int = 1000
    primitives: Tuple[Primitive, ...] = field(default_factory=tuple)
    defaults: Style = DEFAULT_STYLE

    def __len__(self):
        return len(self.primitives)

    def __iter__(self):
        return iter(self.primitives)

    def ids(self) -> List[str]:
        return [prim.id for prim in self.primitives]

    def get(self, prim_id: str) -> Optional[Primitive]:
        for prim in self.primitives:
            if prim.id == prim_id:
                return prim
        return None

    def appended(self, prim: Primitive) -> 'Program':
        return replace(self, primitives=self.primitives + (prim,))

    def without(self, prim_id: str) -> 'Program':
        return replace(self, primitives=tuple(p for p in self.primitives if p.id != prim_id))

    def replaced(self, prim: Primitive) -> 'Program':
        return replace(self, primitives=tuple(prim if p.id == prim.id else p
                                              for p in self.primitives))

    def with_primitives(self, primitives: Iterable[Primitive]) -> 'Program':
        return replace(self, primitives=tuple(primitives))

    def fresh_id(self, prefix: str) -> str:
        """ Returns the first id of the form <prefix><n> not used by the program. """
        used = set(self.ids())
        index = 1
        while '{}{}'.format(prefix, index) in used:
            index += 1
        return '{}{}'.format(prefix, index)
