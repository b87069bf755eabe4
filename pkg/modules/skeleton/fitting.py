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

""" Fits line-segment and circle hypotheses to the thinned strokes of an edge map.

The one-pixel skeleton is cut at its junctions into branches. Every branch is
ordered into a pixel path and explained by a total-least-squares line, an
algebraic circle, or split at its point of largest deviation and explained
piecewise. Pieces that belong together (collinear halves of a line cut by a
junction, arcs of one circle) are merged afterwards.
"""

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple
import math

import numpy as np
from scipy import ndimage

from modules.anchoring import Anchor, EdgeMap, cluster_points, thin
from modules.anchoring.junctions import crossing_numbers
from modules.program import Point2D
from modules.skeleton.types import CircleHypothesis, FittedPrimitives, SegmentHypothesis, \
    SkeletonConfig

_EIGHT = np.ones((3, 3), dtype=bool)
_FOUR_FIRST = ((0, -1), (1, 0), (0, 1), (-1, 0), (1, -1), (1, 1), (-1, 1), (-1, -1))
MAX_SPLIT_DEPTH = 12


@dataclass
class _LineFit:
    points: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    direction: np.ndarray
    rms: float


@dataclass
class _CircleFit:
    points: np.ndarray
    center: np.ndarray
    radius: float
    rms: float
    coverage: float
    start_deg: float
    end_deg: float


def fit_line(points: np.ndarray, tolerance: float) -> Optional[_LineFit]:
    """ Total-least-squares line, accepted when no point deviates by more than
    ``tolerance``; endpoints are the extreme projections. """
    if len(points) < 2:
        return None
    centroid = points.mean(axis=0)
    centered = points - centroid
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    direction, normal = vt[0], vt[-1]
    deviation = np.abs(centered @ normal)
    if deviation.max() > tolerance:
        return None
    along = centered @ direction
    return _LineFit(points, centroid + along.min() * direction, centroid + along.max() * direction,
                    direction, float(np.sqrt((deviation ** 2).mean())))


def angular_coverage(points: np.ndarray, center: np.ndarray) -> Tuple[float, float, float]:
    """ (coverage, start, end) in degrees of the points seen from ``center``,
    counter-clockwise with y up; the uncovered part is the largest gap. """
    angles = np.sort(np.degrees(np.arctan2(-(points[:, 1] - center[1]),
                                           points[:, 0] - center[0])) % 360.0)
    gaps = np.diff(np.concatenate([angles, [angles[0] + 360.0]]))
    widest = int(np.argmax(gaps))
    coverage = 360.0 - float(gaps[widest])
    start = float(angles[(widest + 1) % len(angles)])
    end = float(angles[widest])
    return coverage, start, end


def fit_circle(points: np.ndarray, cfg: SkeletonConfig, max_radius: float) -> Optional[_CircleFit]:
    """ Algebraic circle fit, accepted when every point lies within
    ``circle_tolerance`` of the circle. """
    if len(points) < 8:
        return None
    design = np.column_stack([points[:, 0], points[:, 1], np.ones(len(points))])
    target = -(points[:, 0] ** 2 + points[:, 1] ** 2)
    (d, e, f), *_ = np.linalg.lstsq(design, target, rcond=None)
    center = np.array([-d / 2.0, -e / 2.0])
    squared = center[0] ** 2 + center[1] ** 2 - f
    if squared <= 0:
        return None
    radius = math.sqrt(squared)
    if not cfg.min_circle_radius <= radius <= max_radius:
        return None
    radial = np.abs(np.hypot(points[:, 0] - center[0], points[:, 1] - center[1]) - radius)
    if radial.max() > cfg.circle_tolerance:
        return None
    coverage, start, end = angular_coverage(points, center)
    if coverage < cfg.min_arc_coverage:
        return None
    return _CircleFit(points, center, radius, float(np.sqrt((radial ** 2).mean())), coverage,
                      start, end)


def _split_index(points: np.ndarray) -> Optional[int]:
    """ Interior point farthest from the chord (from the start when the path is closed). """
    if len(points) < 3:
        return None
    start, end = points[0], points[-1]
    chord = end - start
    norm = math.hypot(chord[0], chord[1])
    interior = points[1:-1]
    if norm < 1.0:
        distance = np.hypot(interior[:, 0] - start[0], interior[:, 1] - start[1])
    else:
        distance = np.abs(chord[0] * (interior[:, 1] - start[1]) -
                          chord[1] * (interior[:, 0] - start[0])) / norm
    return int(np.argmax(distance)) + 1


def fit_path(points: np.ndarray, cfg: SkeletonConfig, max_radius: float, depth: int = 0) -> list:
    """ Explains an ordered pixel path by lines and circles, in path order. """
    if len(points) < cfg.min_branch_length:
        return []
    line = fit_line(points, cfg.line_tolerance)
    if line is not None:
        return [line]
    circle = fit_circle(points, cfg, max_radius)
    if circle is not None:
        return [circle]
    idx = _split_index(points)
    if idx is None or depth >= MAX_SPLIT_DEPTH:
        return []
    return fit_path(points[:idx + 1], cfg, max_radius, depth + 1) + \
        fit_path(points[idx:], cfg, max_radius, depth + 1)


def _order_branch(pixels: Sequence[tuple], start: tuple = None) -> List[tuple]:
    """ Walks the branch pixels from an end (or ``start``), preferring
    4-connected steps. """
    remaining = set(pixels)

    def neighbours(pixel):
        return [(pixel[0] + dx, pixel[1] + dy) for dx, dy in _FOUR_FIRST
                if (pixel[0] + dx, pixel[1] + dy) in remaining]

    if start is None:
        ends = sorted((p for p in pixels if len([1 for dx, dy in _FOUR_FIRST
                                                 if (p[0] + dx, p[1] + dy) in remaining]) <= 1),
                      key=lambda p: (p[1], p[0]))
        start = ends[0] if ends else min(pixels, key=lambda p: (p[1], p[0]))
    path = [start]
    remaining.discard(start)
    current = start
    while True:
        options = neighbours(current)
        if not options:
            break
        current = options[0]
        remaining.discard(current)
        path.append(current)
    return path


def _is_closed(pixels: Sequence[tuple]) -> bool:
    members = set(pixels)
    for x, y in pixels:
        count = sum(1 for dx, dy in _FOUR_FIRST if (x + dx, y + dy) in members)
        if count < 2:
            return False
    return True


def _loop_start(pixels: Sequence[tuple], anchors: List[Anchor]) -> tuple:
    coords = np.array(pixels, dtype=np.float64)
    for anchor in anchors:
        distance = np.hypot(coords[:, 0] - anchor.pos.x, coords[:, 1] - anchor.pos.y)
        idx = int(np.argmin(distance))
        if distance[idx] <= 3.0:
            return pixels[idx]
    centroid = coords.mean(axis=0)
    return pixels[int(np.argmax(np.hypot(coords[:, 0] - centroid[0],
                                         coords[:, 1] - centroid[1])))]


def _project(point: np.ndarray, fit: _LineFit) -> np.ndarray:
    base = fit.p1
    return base + ((point - base) @ fit.direction) * fit.direction


def _attach(fit: _LineFit, branch_end: np.ndarray, nodes: np.ndarray, radius: float):
    """ Extends the line end nearest ``branch_end`` to the junction node it touches. """
    if len(nodes) == 0:
        return
    distance = np.hypot(nodes[:, 0] - branch_end[0], nodes[:, 1] - branch_end[1])
    idx = int(np.argmin(distance))
    if distance[idx] > radius:
        return
    target = _project(nodes[idx], fit)
    if np.hypot(*(fit.p1 - branch_end)) <= np.hypot(*(fit.p2 - branch_end)):
        fit.p1 = target
    else:
        fit.p2 = target


def _angle(fit: _LineFit) -> float:
    return math.degrees(math.atan2(fit.direction[1], fit.direction[0])) % 180.0


def _merge_collinear(lines: List[_LineFit], cfg: SkeletonConfig) -> List[_LineFit]:
    merged = True
    while merged:
        merged = False
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                first, second = lines[i], lines[j]
                diff = abs(_angle(first) - _angle(second)) % 180.0
                if min(diff, 180.0 - diff) > cfg.angle_tolerance:
                    continue
                gap = min(np.hypot(*(a - b)) for a in (first.p1, first.p2)
                          for b in (second.p1, second.p2))
                if gap > cfg.collinear_gap:
                    continue
                joined = fit_line(np.vstack([first.points, second.points]), cfg.line_tolerance)
                if joined is None:
                    continue
                ends = np.array([first.p1, first.p2, second.p1, second.p2])
                along = (ends - joined.p1) @ joined.direction
                joined.p1 = _project(ends[int(np.argmin(along))], joined)
                joined.p2 = _project(ends[int(np.argmax(along))], joined)
                lines = [line for k, line in enumerate(lines) if k not in (i, j)] + [joined]
                merged = True
                break
            if merged:
                break
    return lines


def _overlaps(short: _LineFit, long: _LineFit, cfg: SkeletonConfig) -> bool:
    diff = abs(_angle(short) - _angle(long)) % 180.0
    if min(diff, 180.0 - diff) > cfg.angle_tolerance:
        return False
    for end in (short.p1, short.p2):
        offset = end - long.p1
        seg = long.p2 - long.p1
        norm = float(seg @ seg)
        t = 0.0 if norm == 0 else max(0.0, min(1.0, float(offset @ seg) / norm))
        if np.hypot(*(long.p1 + t * seg - end)) > cfg.overlap_distance:
            return False
    return True


def _drop_overlapping(lines: List[_LineFit], cfg: SkeletonConfig) -> List[_LineFit]:
    """ Keeps the better of two hypotheses covering the same stroke: more
    inliers, then smaller residual, then the earlier one. """
    ranked = sorted(range(len(lines)), key=lambda k: (-len(lines[k].points), lines[k].rms, k))
    kept = []
    for k in ranked:
        candidate = lines[k]
        if not any(_overlaps(candidate, lines[other], cfg) or _overlaps(lines[other], candidate,
                                                                          cfg)
                   for other in kept):
            kept.append(k)
    return [lines[k] for k in sorted(kept)]


def _merge_circles(circles: List[_CircleFit], cfg: SkeletonConfig,
                   max_radius: float) -> List[_CircleFit]:
    merged = True
    while merged:
        merged = False
        for i in range(len(circles)):
            for j in range(i + 1, len(circles)):
                first, second = circles[i], circles[j]
                if np.hypot(*(first.center - second.center)) > cfg.circle_merge_distance or \
                        abs(first.radius - second.radius) > cfg.circle_merge_distance:
                    continue
                joined = fit_circle(np.vstack([first.points, second.points]), cfg, max_radius)
                if joined is None:
                    continue
                circles = [c for k, c in enumerate(circles) if k not in (i, j)] + [joined]
                merged = True
                break
            if merged:
                break
    return circles


def _point(coords) -> Point2D:
    return Point2D(float(coords[0]), float(coords[1]))


def _segment_hypotheses(lines: List[_LineFit]) -> List[SegmentHypothesis]:
    hypotheses = []
    for line in lines:
        p1, p2 = _point(line.p1), _point(line.p2)
        if (p2.y, p2.x) < (p1.y, p1.x):
            p1, p2 = p2, p1
        hypotheses.append(SegmentHypothesis('', p1, p2, len(line.points), line.rms))
    hypotheses.sort(key=lambda h: (h.p1.y, h.p1.x, h.p2.y, h.p2.x))
    return [replace(h, id='S{}'.format(idx + 1)) for idx, h in enumerate(hypotheses)]


def _circle_hypotheses(circles: List[_CircleFit], cfg: SkeletonConfig) -> List[CircleHypothesis]:
    hypotheses = []
    for circle in circles:
        partial = circle.coverage < cfg.full_circle_coverage
        hypotheses.append(CircleHypothesis('', _point(circle.center), float(circle.radius),
                                           len(circle.points), circle.rms,
                                           circle.start_deg if partial else None,
                                           circle.end_deg if partial else None))
    hypotheses.sort(key=lambda h: (h.center.y, h.center.x, h.radius))
    return [replace(h, id='C{}'.format(idx + 1)) for idx, h in enumerate(hypotheses)]


def fit_primitives(edges: EdgeMap, anchors: List[Anchor],
                   cfg: SkeletonConfig = SkeletonConfig(),
                   skeleton: np.ndarray = None) -> FittedPrimitives:
    """ Segment and circle hypotheses explaining the strokes of an edge map.

    Args:
        edges (EdgeMap): the observation's edge pixels
        anchors (List[Anchor]): verified anchors; closed strokes are opened at
                                the first anchor lying on them
        cfg (SkeletonConfig): fitting tolerances
        skeleton (np.ndarray): precomputed thinning of ``edges.mask``

    Returns:
        FittedPrimitives: hypotheses with ids ``S1..`` and ``C1..``
    """
    if edges.is_empty():
        return FittedPrimitives()
    if skeleton is None:
        skeleton = thin(edges.mask)
    max_radius = 2.0 * max(edges.width, edges.height)
    crossing, _ = crossing_numbers(skeleton)
    junction_pixels = skeleton & (crossing >= 3)
    rows, cols = np.nonzero(junction_pixels)
    junction_coords = np.stack([cols, rows], axis=1).astype(np.float64)
    nodes = np.array([junction_coords[members].mean(axis=0)
                      for members in cluster_points(junction_coords, cfg.junction_radius)])
    node_zone = ndimage.binary_dilation(junction_pixels, structure=_EIGHT) & skeleton
    labels, count = ndimage.label(skeleton & ~node_zone, structure=_EIGHT)

    lines, circles = [], []
    attach_radius = cfg.junction_radius + 2.0
    for label, window in enumerate(ndimage.find_objects(labels), start=1):
        if window is None:
            continue
        local_rows, local_cols = np.nonzero(labels[window] == label)
        pixels = [(int(x) + window[1].start, int(y) + window[0].start)
                  for y, x in zip(local_rows, local_cols)]
        if len(pixels) < cfg.min_branch_length:
            continue
        if _is_closed(pixels):
            loop = np.array(pixels, dtype=np.float64)
            whole = fit_circle(loop, cfg, max_radius)
            if whole is not None:
                circles.append(whole)
                continue
            path = _order_branch(pixels, _loop_start(pixels, anchors))
            path.append(path[0])
            fits = fit_path(np.array(path, dtype=np.float64), cfg, max_radius)
        else:
            path = _order_branch(pixels)
            coords = np.array(path, dtype=np.float64)
            fits = fit_path(coords, cfg, max_radius)
            if fits and isinstance(fits[0], _LineFit):
                _attach(fits[0], coords[0], nodes, attach_radius)
            if fits and isinstance(fits[-1], _LineFit):
                _attach(fits[-1], coords[-1], nodes, attach_radius)
        for fit in fits:
            (lines if isinstance(fit, _LineFit) else circles).append(fit)

    lines = _drop_overlapping(_merge_collinear(lines, cfg), cfg)
    circles = _merge_circles(circles, cfg, max_radius)
    return FittedPrimitives(tuple(_segment_hypotheses(lines)),
                            tuple(_circle_hypotheses(circles, cfg)))


def stroke_width(edges: EdgeMap, skeleton: np.ndarray = None) -> float:
    """ Median stroke width: twice the distance from the skeleton to the
    background, minus the centre pixel. """
    if edges.is_empty():
        return 2.0
    if skeleton is None:
        skeleton = thin(edges.mask)
    depth = ndimage.distance_transform_edt(edges.mask)
    widths = 2.0 * depth[skeleton] - 1.0
    return float(np.median(widths)) if len(widths) else 2.0
