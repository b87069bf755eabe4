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

""" Seeded generator of valid geometry programs (triangles, quadrilaterals,
crossed segments, circles) used for round-trip reconstruction checks. """

from typing import List, Tuple
import math

import numpy as np

from modules.program.primitives import Point2D, Primitive, Program, Segment, Circle
from utils.common import corpus_rng

CORPUS_KINDS = ('triangle', 'quadrilateral', 'crossed', 'circle')


def _pt(x: float, y: float) -> Point2D:
    return Point2D(round(float(x), 2), round(float(y), 2))


def _min_angle(vertices: List[Point2D]) -> float:
    angles = []
    count = len(vertices)
    for idx in range(count):
        prev_pt, cur, next_pt = vertices[idx - 1], vertices[idx], vertices[(idx + 1) % count]
        v1 = np.array([prev_pt.x - cur.x, prev_pt.y - cur.y])
        v2 = np.array([next_pt.x - cur.x, next_pt.y - cur.y])
        cos = np.dot(v1, v2) / (np.linalg.norm(v1) * np.linalg.norm(v2))
        angles.append(math.degrees(math.acos(float(np.clip(cos, -1.0, 1.0)))))
    return min(angles)


def _min_side(vertices: List[Point2D]) -> float:
    return min(vertices[idx].distance_to(vertices[(idx + 1) % len(vertices)])
               for idx in range(len(vertices)))


def _polygon(rng: np.random.Generator, sides: int) -> List[Point2D]:
    while True:
        center = rng.uniform(420, 580, size=2)
        base = rng.uniform(0, 2 * math.pi)
        angles = base + np.sort(rng.uniform(0, 2 * math.pi, size=sides))
        radii = rng.uniform(220, 330, size=sides)
        vertices = [_pt(center[0] + r * math.cos(a), center[1] + r * math.sin(a))
                    for a, r in zip(angles, radii)]
        if _min_angle(vertices) >= 30.0 and _min_side(vertices) >= 160.0:
            return vertices


def _closed(vertices: List[Point2D], prefix: str = 's') -> List[Primitive]:
    return [Primitive('{}{}'.format(prefix, idx + 1),
                      Segment(vertices[idx], vertices[(idx + 1) % len(vertices)]))
            for idx in range(len(vertices))]


def _triangle(rng) -> List[Primitive]:
    vertices = _polygon(rng, 3)
    prims = _closed(vertices)
    if rng.random() < 0.5:
        # median from the first vertex
        mid = _pt((vertices[1].x + vertices[2].x) / 2, (vertices[1].y + vertices[2].y) / 2)
        prims.append(Primitive('m1', Segment(vertices[0], mid)))
    return prims


def _quadrilateral(rng) -> List[Primitive]:
    vertices = _polygon(rng, 4)
    prims = _closed(vertices)
    if rng.random() < 0.5:
        prims.append(Primitive('d1', Segment(vertices[0], vertices[2])))
    return prims


def _crossed(rng) -> List[Primitive]:
    count = int(rng.integers(2, 4))
    while True:
        angles = rng.uniform(0, 180, size=count)
        diffs = [abs((a - b + 90) % 180 - 90) for i, a in enumerate(angles)
                 for b in angles[i + 1:]]
        if min(diffs) >= 30.0:
            break
    prims = []
    for idx, angle in enumerate(angles):
        center = rng.uniform(430, 570, size=2)
        half = rng.uniform(180, 320)
        dx, dy = half * math.cos(math.radians(angle)), half * math.sin(math.radians(angle))
        prims.append(Primitive('s{}'.format(idx + 1),
                               Segment(_pt(center[0] - dx, center[1] - dy),
                                       _pt(center[0] + dx, center[1] + dy))))
    return prims


def _circle(rng) -> List[Primitive]:
    center = _pt(*rng.uniform(440, 560, size=2))
    radius = round(float(rng.uniform(150, 300)), 2)
    prims = [Primitive('c1', Circle(center, radius))]
    angle = rng.uniform(0, math.pi)
    dx, dy = radius * math.cos(angle), radius * math.sin(angle)
    prims.append(Primitive('s1', Segment(_pt(center.x - dx, center.y - dy),
                                         _pt(center.x + dx, center.y + dy))))
    return prims


_BUILDERS = {
    'triangle': _triangle,
    'quadrilateral': _quadrilateral,
    'crossed': _crossed,
    'circle': _circle,
}


def random_program(rng: np.random.Generator, kind: str) -> Program:
    """ Draws one valid program of the given kind on the standard 1000 px canvas. """
    if kind not in _BUILDERS:
        raise ValueError('unknown corpus kind "{}"'.format(kind))
    return Program(primitives=tuple(_BUILDERS[kind](rng)))


def synthetic_corpus(count: int, seed: int = 0) -> List[Tuple[str, Program]]:
    """ Returns ``count`` (name, program) pairs cycling through all corpus kinds. """
    rng = corpus_rng(seed)
    corpus = []
    for idx in range(count):
        kind = CORPUS_KINDS[idx % len(CORPUS_KINDS)]
        corpus.append(('{}_{:03d}'.format(kind, idx), random_program(rng, kind)))
    return corpus
