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

""" The deterministic execution stage: turns a program into pixels. """

from typing import Iterable

import numpy as np

from modules.module import Module
from modules.program import Program, Primitive, PrimitiveKind, DashStyle, direction, \
    validate_consistency
from modules.renderer import rasterize
from modules.renderer.exceptions import RenderFailure
from modules.renderer.font import GLYPH_WIDTH, SUBSCRIPTS, glyph_pixels
from modules.renderer.raster import Raster, WHITE
from utils.logger import GeoLogger

LABEL_SCALE = 2
TICK_HALF_LENGTH = 5.0


def _rounded(point):
    return rasterize.round_half_up(point.x), rasterize.round_half_up(point.y)


def _segment_path(p1, p2) -> np.ndarray:
    x0, y0 = _rounded(p1)
    x1, y1 = _rounded(p2)
    return rasterize.line_pixels(x0, y0, x1, y1)


def _label_pixels(prim: Primitive) -> np.ndarray:
    shape = prim.shape
    left = rasterize.round_half_up(shape.anchor.x + shape.offset.x)
    top = rasterize.round_half_up(shape.anchor.y + shape.offset.y)
    cells = []
    cursor = left
    for char in shape.text:
        if char in SUBSCRIPTS:
            scale, base_y, char = 1, top + 4 * LABEL_SCALE + 1, SUBSCRIPTS[char]
        else:
            scale, base_y = LABEL_SCALE, top
        for col, row in glyph_pixels(char):
            for sy in range(scale):
                for sx in range(scale):
                    cells.append((cursor + col * scale + sx, base_y + row * scale + sy))
        cursor += (GLYPH_WIDTH + 1) * scale
    if not cells:
        return np.zeros((0, 2), dtype=np.int64)
    return np.unique(np.array(cells, dtype=np.int64), axis=0)


def _path(prim: Primitive) -> np.ndarray:
    """ Ordered centre-line pixels of a stroked primitive. """
    shape = prim.shape
    kind = prim.kind
    if kind is PrimitiveKind.PointMark:
        return np.array([_rounded(shape.pos)], dtype=np.int64)
    if kind is PrimitiveKind.Segment:
        return _segment_path(shape.p1, shape.p2)
    if kind is PrimitiveKind.Circle:
        cx, cy = _rounded(shape.center)
        return rasterize.circle_pixels(cx, cy, rasterize.round_half_up(shape.radius))
    if kind is PrimitiveKind.Arc:
        cx, cy = _rounded(shape.center)
        return rasterize.arc_pixels(cx, cy, rasterize.round_half_up(shape.radius),
                                    shape.start_deg, shape.end_deg)
    if kind is PrimitiveKind.Polyline:
        return rasterize.polyline_pixels([_rounded(p) for p in shape.points])
    if kind is PrimitiveKind.RightAngleMark:
        u1 = direction(shape.arm1_deg)
        u2 = direction(shape.arm2_deg)
        vx, vy, size = shape.vertex.x, shape.vertex.y, shape.size
        first = (vx + size * u1[0], vy + size * u1[1])
        corner = (vx + size * (u1[0] + u2[0]), vy + size * (u1[1] + u2[1]))
        second = (vx + size * u2[0], vy + size * u2[1])
        return rasterize.polyline_pixels([(rasterize.round_half_up(x), rasterize.round_half_up(y))
                                          for x, y in (first, corner, second)])
    if kind is PrimitiveKind.TickMark:
        ux, uy = direction(shape.direction_deg)
        # perpendicular to the marked segment
        nx, ny = -uy, ux
        mx, my = shape.midpoint.x, shape.midpoint.y
        x0 = rasterize.round_half_up(mx - TICK_HALF_LENGTH * nx)
        y0 = rasterize.round_half_up(my - TICK_HALF_LENGTH * ny)
        x1 = rasterize.round_half_up(mx + TICK_HALF_LENGTH * nx)
        y1 = rasterize.round_half_up(my + TICK_HALF_LENGTH * ny)
        return rasterize.line_pixels(x0, y0, x1, y1)
    raise RenderFailure(prim.id, 'unknown primitive kind {}'.format(kind))


def rasterize_primitive(prim: Primitive, width: int, height: int) -> np.ndarray:
    """ Returns the on-canvas (x, y) pixels the primitive paints, clipped to
    the canvas. Used by the renderer itself and by region attribution. """
    if prim.kind is PrimitiveKind.Label:
        return rasterize.clip(_label_pixels(prim), width, height)
    path = _path(prim)
    if prim.style.dash is DashStyle.Dashed and prim.kind is not PrimitiveKind.PointMark:
        path = path[rasterize.dash_mask(len(path))]
    covered = rasterize.stamp(path, rasterize.stroke_radius(prim.style.stroke_width))
    return rasterize.clip(covered, width, height)


def primitive_mask(prim: Primitive, width: int, height: int) -> np.ndarray:
    """ Boolean (height, width) mask of the pixels painted by one primitive. """
    mask = np.zeros((height, width), dtype=bool)
    pixels = rasterize_primitive(prim, width, height)
    if len(pixels):
        mask[pixels[:, 1], pixels[:, 0]] = True
    return mask


def render(program: Program) -> Raster:
    """ Draws the program on a white canvas in statement order.

    Raises:
        RenderFailure: the program has consistency violations, or a stroked
                       primitive lands entirely off the canvas
    """
    violations = validate_consistency(program)
    if violations:
        raise RenderFailure(violations[0].primitive_id or 'canvas', violations[0].reason)
    canvas = np.empty((program.height, program.width, 3), dtype=np.uint8)
    canvas[:, :] = WHITE
    for prim in program.primitives:
        pixels = rasterize_primitive(prim, program.width, program.height)
        if len(pixels) == 0:
            if prim.kind is PrimitiveKind.Label:
                continue
            raise RenderFailure(prim.id, 'no pixel lands on the canvas')
        canvas[pixels[:, 1], pixels[:, 0]] = prim.style.color
    return Raster(canvas)


def render_overlay(raster: Raster, anchors: Iterable, color=(255, 0, 0), arm: int = 4) -> Raster:
    """ Draws a cross on every anchor (anything with a ``pos`` point) for visual review. """
    canvas = raster.copy_pixels()
    for anchor in anchors:
        x, y = _rounded(anchor.pos)
        for dx in range(-arm, arm + 1):
            for px, py in ((x + dx, y), (x, y + dx)):
                if 0 <= px < raster.width and 0 <= py < raster.height:
                    canvas[py, px] = color
    return Raster(canvas)


class ProgramExecutor(Module):
    """ Execution stage of the reconstruction loop.

    Consumes ``program`` and emits ``rendered``; identical programs are
    rendered once.
    """

    def __init__(self, logger: GeoLogger = GeoLogger()):
        Module.__init__(self, logger=logger)
        self._last = None

    def start_reconstruction(self, **kwargs):
        self._last = None
        return {}

    def forward(self, system, program: Program = None, **kwargs) -> dict:
        if program is None:
            return {}
        if self._last is not None and self._last[0] == program:
            return {'rendered': self._last[1]}
        rendered = render(program)
        self._last = (program, rendered)
        return {'rendered': rendered}
