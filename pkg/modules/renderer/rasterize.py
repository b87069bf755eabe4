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

""" Integer rasterization primitives: midpoint lines and circles, disc stamps
and dash masks. All functions return ordered (N, 2) integer arrays of (x, y)
pixel coordinates and never look at a canvas. """

from typing import List
import math

import numpy as np

DASH_ON = 8
DASH_OFF = 4


def round_half_up(value: float) -> int:
    """ Rounds to the nearest integer, halves upward (platform independent). """
    return int(math.floor(value + 0.5))


def line_pixels(x0: int, y0: int, x1: int, y1: int) -> np.ndarray:
    """ All-octant integer Bresenham line from (x0, y0) to (x1, y1), both ends
    included, ordered from the first end to the second. """
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    error = dx + dy
    x, y = x0, y0
    points = []
    while True:
        points.append((x, y))
        if x == x1 and y == y1:
            break
        e2 = 2 * error
        if e2 >= dy:
            error += dy
            x += sx
        if e2 <= dx:
            error += dx
            y += sy
    return np.array(points, dtype=np.int64)


def _first_octant(radius: int) -> List[tuple]:
    """ Midpoint circle points (x, y) with 0 <= x <= y, x increasing. """
    x, y = 0, radius
    decision = 1 - radius
    points = []
    while x <= y:
        points.append((x, y))
        x += 1
        if decision < 0:
            decision += 2 * x + 1
        else:
            y -= 1
            decision += 2 * (x - y) + 1
    return points


def circle_pixels(cx: int, cy: int, radius: int) -> np.ndarray:
    """ Midpoint circle, ordered clockwise on screen starting at the top. """
    if radius <= 0:
        return np.array([(cx, cy)], dtype=np.int64)
    octant = _first_octant(radius)
    rev = octant[::-1]
    runs = [
        [(cx + x, cy - y) for x, y in octant],
        [(cx + y, cy - x) for x, y in rev],
        [(cx + y, cy + x) for x, y in octant],
        [(cx + x, cy + y) for x, y in rev],
        [(cx - x, cy + y) for x, y in octant],
        [(cx - y, cy + x) for x, y in rev],
        [(cx - y, cy - x) for x, y in octant],
        [(cx - x, cy - y) for x, y in rev],
    ]
    seen = set()
    ordered = []
    for run in runs:
        for point in run:
            if point not in seen:
                seen.add(point)
                ordered.append(point)
    return np.array(ordered, dtype=np.int64)


def arc_pixels(cx: int, cy: int, radius: int, start_deg: float, end_deg: float) -> np.ndarray:
    """ Circle pixels whose angle (counter-clockwise, y up) lies on the arc
    running from start_deg to end_deg. """
    circle = circle_pixels(cx, cy, radius)
    angles = np.degrees(np.arctan2(-(circle[:, 1] - cy), circle[:, 0] - cx)) % 360.0
    sweep = (end_deg - start_deg) % 360.0
    keep = ((angles - start_deg) % 360.0) <= sweep + 1e-9
    return circle[keep]


def polyline_pixels(points: List[tuple]) -> np.ndarray:
    runs = []
    for (x0, y0), (x1, y1) in zip(points[:-1], points[1:]):
        run = line_pixels(x0, y0, x1, y1)
        runs.append(run if not runs else run[1:])
    if not runs:
        return np.array([points[0]], dtype=np.int64)
    return np.concatenate(runs)


def disc_offsets(radius: float) -> np.ndarray:
    """ Integer offsets (dx, dy) with dx² + dy² <= radius². """
    reach = int(math.ceil(radius))
    grid = np.arange(-reach, reach + 1)
    dx, dy = np.meshgrid(grid, grid)
    inside = dx * dx + dy * dy <= radius * radius + 1e-9
    return np.stack([dx[inside], dy[inside]], axis=1).astype(np.int64)


def stroke_radius(stroke_width: float) -> float:
    """ Disc radius realizing a stroke of the given width. """
    return max(0.0, (stroke_width - 1.0) / 2.0)


def drawn_width(stroke_width: float) -> int:
    """ Pixels across a stroke as actually drawn; widths between two odd
    integers round down to the lower one. """
    return 2 * int(math.floor(stroke_radius(stroke_width) + 1e-9)) + 1


def dash_mask(count: int) -> np.ndarray:
    """ Boolean keep-mask for ``count`` ordered path pixels, 8 on and 4 off. """
    return (np.arange(count) % (DASH_ON + DASH_OFF)) < DASH_ON


def stamp(path: np.ndarray, radius: float) -> np.ndarray:
    """ Places a disc on every path pixel and returns the unique covered pixels. """
    if len(path) == 0:
        return path
    offsets = disc_offsets(radius)
    if len(offsets) == 1:
        return path
    covered = (path[:, None, :] + offsets[None, :, :]).reshape(-1, 2)
    return np.unique(covered, axis=0)


def clip(pixels: np.ndarray, width: int, height: int) -> np.ndarray:
    """ Drops the pixels outside the canvas. """
    if len(pixels) == 0:
        return pixels
    inside = (pixels[:, 0] >= 0) & (pixels[:, 0] < width) & \
        (pixels[:, 1] >= 0) & (pixels[:, 1] < height)
    return pixels[inside]
