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

""" Chamfer and Hausdorff distances between edge-pixel sets.

Nearest-neighbour distances are read from an exact Euclidean distance
transform of the other set; tiny sets are compared pairwise instead.
"""

from typing import Tuple

import numpy as np
from scipy.ndimage import distance_transform_edt
from scipy.spatial.distance import cdist

from modules.anchoring import EdgeMap
from modules.metrics.exceptions import EmptyEdgeSet, DimensionMismatch

BRUTE_FORCE_BELOW = 64


class DistanceField(object):
    """ Lazily computed distance-to-nearest-edge-pixel field of an edge map;
    one instance can serve many comparisons against the same edges. """

    def __init__(self, edges: EdgeMap):
        self.edges = edges
        self._field = None

    @property
    def field(self) -> np.ndarray:
        if self._field is None:
            self._field = distance_transform_edt(~self.edges.mask)
        return self._field

    def lookup(self, points: np.ndarray) -> np.ndarray:
        """ Distance from each (x, y) point to the nearest edge pixel. """
        return self.field[points[:, 1], points[:, 0]]


def _check(first: EdgeMap, second: EdgeMap):
    if (first.width, first.height) != (second.width, second.height):
        raise DimensionMismatch((first.width, first.height), (second.width, second.height))
    if first.is_empty():
        raise EmptyEdgeSet('a')
    if second.is_empty():
        raise EmptyEdgeSet('b')


def brute_force_distances(first: np.ndarray, second: np.ndarray) -> Tuple[np.ndarray,
                                                                          np.ndarray]:
    """ Directed nearest-neighbour distances by exhaustive pairing. """
    pairwise = cdist(first.astype(np.float64), second.astype(np.float64))
    return pairwise.min(axis=1), pairwise.min(axis=0)


def directed_distances(first: EdgeMap, second: EdgeMap, first_field: DistanceField = None,
                       second_field: DistanceField = None) -> Tuple[np.ndarray, np.ndarray]:
    """ Nearest-neighbour distances from every pixel of ``first`` to ``second``
    and from every pixel of ``second`` to ``first``.

    Raises:
        DimensionMismatch: the edge maps have different sizes
        EmptyEdgeSet: one of them has no pixel
    """
    _check(first, second)
    points_a, points_b = first.points(), second.points()
    if len(points_a) < BRUTE_FORCE_BELOW and len(points_b) < BRUTE_FORCE_BELOW:
        return brute_force_distances(points_a, points_b)
    first_field = first_field or DistanceField(first)
    second_field = second_field or DistanceField(second)
    return second_field.lookup(points_a), first_field.lookup(points_b)


def compare_edges(first: EdgeMap, second: EdgeMap, first_field: DistanceField = None,
                  second_field: DistanceField = None) -> Tuple[float, float]:
    """ Returns (chamfer, hausdorff) with a single pass over both sets. """
    a_to_b, b_to_a = directed_distances(first, second, first_field, second_field)
    chamfer = 0.5 * (float(a_to_b.mean()) + float(b_to_a.mean()))
    hausdorff = max(float(a_to_b.max()), float(b_to_a.max()))
    return chamfer, hausdorff


def chamfer_distance(first: EdgeMap, second: EdgeMap) -> float:
    """ Symmetric mean nearest-neighbour distance in pixels. """
    return compare_edges(first, second)[0]


def hausdorff_distance(first: EdgeMap, second: EdgeMap) -> float:
    """ Largest nearest-neighbour distance in either direction, in pixels. """
    return compare_edges(first, second)[1]
