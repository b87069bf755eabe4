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

""" Writes a Program in canonical DSL form: one statement per line, coordinates
with two decimals, statements in program order. """

from typing import List

from modules.program.primitives import Program, Primitive, Style, DEFAULT_STYLE, Point2D, \
    PointMark, Segment, Circle, Arc, Polyline, Label, RightAngleMark, TickMark


def _num(value: float) -> str:
    text = '{:.2f}'.format(value)
    return '0.00' if text == '-0.00' else text


def _pt(point: Point2D) -> str:
    return '({},{})'.format(_num(point.x), _num(point.y))


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"').replace('\n', '\\n') \
        .replace('\r', '\\r') + '"'


def _style_attributes(previous: Style, style: Style) -> List[str]:
    parts = []
    if style.stroke_width != previous.stroke_width:
        parts.append('width {}'.format(_num(style.stroke_width)))
    if tuple(style.color) != tuple(previous.color):
        parts.append('color {} {} {}'.format(*style.color))
    if style.dash != previous.dash:
        parts.append('dash {}'.format(style.dash.value))
    return parts


def _statement(prim: Primitive) -> str:
    shape = prim.shape
    keyword = prim.kind.value
    if isinstance(shape, PointMark):
        return 'point {} {} {}'.format(prim.id, _num(shape.pos.x), _num(shape.pos.y))
    if isinstance(shape, Segment):
        body = '{} {}'.format(_pt(shape.p1), _pt(shape.p2))
    elif isinstance(shape, Circle):
        body = '{} {}'.format(_pt(shape.center), _num(shape.radius))
    elif isinstance(shape, Arc):
        body = '{} {} {} {}'.format(_pt(shape.center), _num(shape.radius),
                                    _num(shape.start_deg), _num(shape.end_deg))
    elif isinstance(shape, Polyline):
        body = ' '.join(_pt(point) for point in shape.points)
    elif isinstance(shape, Label):
        body = '{} {} {}'.format(_quote(shape.text), _pt(shape.anchor), _pt(shape.offset))
    elif isinstance(shape, RightAngleMark):
        body = '{} {} {} {}'.format(_pt(shape.vertex), _num(shape.arm1_deg),
                                    _num(shape.arm2_deg), _num(shape.size))
    elif isinstance(shape, TickMark):
        body = '{} {}'.format(_pt(shape.midpoint), _num(shape.direction_deg))
    else:
        raise TypeError('unknown shape {}'.format(type(shape).__name__))
    return '{} {} {}'.format(keyword, prim.id, body)


def serialize_program(program: Program) -> str:
    """ Serializes a program into its canonical, byte-stable text form.

    Args:
        program (Program): a valid program

    Returns:
        str: DSL source, every statement terminated by a newline
    """
    lines = ['canvas {} {}'.format(program.width, program.height)]
    running = DEFAULT_STYLE
    default_changes = _style_attributes(DEFAULT_STYLE, program.defaults)
    if default_changes:
        lines.append('defaults ' + ' '.join(default_changes))
        running = program.defaults
    for prim in program.primitives:
        changes = _style_attributes(running, prim.style)
        if changes:
            lines.append('style ' + ' '.join(changes))
        running = prim.style
        lines.append(_statement(prim))
    return '\n'.join(lines) + '\n'
