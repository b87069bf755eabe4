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

""" Structural validation of programs. Violations are returned as data. """

from dataclasses import dataclass
from enum import Enum
from typing import List
import math

from modules.program.primitives import Program, Primitive, Style, PointMark, Segment, Circle, \
    Arc, Polyline, Label, RightAngleMark, TickMark

MIN_STROKE_WIDTH = 0.5
MAX_STROKE_WIDTH = 20.0
CANVAS_MARGIN = 0.1


class ViolationKind(Enum):
    Degenerate = 'degenerate'
    InvariantBreach = 'invariant_breach'


@dataclass(frozen=True)
class Violation:
    """ One reason why a primitive is not safely renderable. """
    kind: ViolationKind
    primitive_id: str
    reason: str

    def __str__(self):
        return '{}("{}", "{}")'.format(self.kind.name, self.primitive_id, self.reason)


def Degenerate(primitive_id: str, reason: str) -> Violation: # pylint: disable=invalid-name
    return Violation(ViolationKind.Degenerate, primitive_id, reason)


def InvariantBreach(primitive_id: str, reason: str) -> Violation: # pylint: disable=invalid-name
    return Violation(ViolationKind.InvariantBreach, primitive_id, reason)


def _check_style(prim_id: str, style: Style) -> List[Violation]:
    violations = []
    width = style.stroke_width
    if not (isinstance(width, (int, float)) and math.isfinite(width)
            and MIN_STROKE_WIDTH <= width <= MAX_STROKE_WIDTH):
        violations.append(InvariantBreach(prim_id, 'stroke_width in [0.5, 20]'))
    color = tuple(style.color)
    if len(color) != 3 or any(not isinstance(c, int) or c < 0 or c > 255 for c in color):
        violations.append(InvariantBreach(prim_id, 'color channels in [0, 255]'))
    return violations


def _angles_ok(*angles: float) -> bool:
    return all(math.isfinite(angle) and 0.0 <= angle < 360.0 for angle in angles)


def _check_shape(program: Program, prim: Primitive) -> List[Violation]:
    shape = prim.shape
    points = shape.control_points()
    if not all(point.is_finite() for point in points):
        return [InvariantBreach(prim.id, 'finite coordinates')]

    violations = []
    low_x, high_x = -CANVAS_MARGIN * program.width, (1.0 + CANVAS_MARGIN) * program.width
    low_y, high_y = -CANVAS_MARGIN * program.height, (1.0 + CANVAS_MARGIN) * program.height
    if any(not (low_x <= p.x <= high_x and low_y <= p.y <= high_y) for p in points):
        violations.append(InvariantBreach(prim.id, 'coordinates within canvas margin'))

    if isinstance(shape, Segment):
        if shape.p1 == shape.p2:
            violations.append(Degenerate(prim.id, 'zero length'))
    elif isinstance(shape, (Circle, Arc)):
        if not math.isfinite(shape.radius) or shape.radius < 0:
            violations.append(InvariantBreach(prim.id, 'radius > 0'))
        elif shape.radius == 0:
            violations.append(Degenerate(prim.id, 'zero radius'))
        if isinstance(shape, Arc):
            if not _angles_ok(shape.start_deg, shape.end_deg):
                violations.append(InvariantBreach(prim.id, 'angles in [0, 360)'))
            elif shape.start_deg == shape.end_deg:
                violations.append(Degenerate(prim.id, 'zero sweep'))
    elif isinstance(shape, Polyline):
        if len(shape.points) < 2:
            violations.append(InvariantBreach(prim.id, 'polyline has >= 2 points'))
        elif all(point == shape.points[0] for point in shape.points):
            violations.append(Degenerate(prim.id, 'zero length'))
    elif isinstance(shape, Label):
        if not shape.offset.is_finite():
            violations.append(InvariantBreach(prim.id, 'finite coordinates'))
        if not shape.text:
            violations.append(Degenerate(prim.id, 'empty text'))
    elif isinstance(shape, RightAngleMark):
        if not _angles_ok(shape.arm1_deg, shape.arm2_deg):
            violations.append(InvariantBreach(prim.id, 'angles in [0, 360)'))
        if not math.isfinite(shape.size) or shape.size < 0:
            violations.append(InvariantBreach(prim.id, 'size > 0'))
        elif shape.size == 0:
            violations.append(Degenerate(prim.id, 'zero size'))
    elif isinstance(shape, TickMark):
        if not _angles_ok(shape.direction_deg):
            violations.append(InvariantBreach(prim.id, 'angles in [0, 360)'))
    elif not isinstance(shape, PointMark):
        violations.append(InvariantBreach(prim.id, 'unknown primitive variant'))
    return violations


def validate_consistency(program: Program) -> List[Violation]:
    """ Checks every type invariant of a program.

    Args:
        program (Program): the program to check

    Returns:
        List[Violation]: empty iff the program renders without undefined behaviour
    """
    violations = []
    if program.width < 1 or program.height < 1:
        violations.append(InvariantBreach('canvas', 'canvas dimensions >= 1'))
    seen = set()
    for prim in program.primitives:
        if prim.id in seen:
            violations.append(InvariantBreach(prim.id, 'unique id'))
        seen.add(prim.id)
        violations.extend(_check_style(prim.id, prim.style))
        violations.extend(_check_shape(program, prim))
    return violations
