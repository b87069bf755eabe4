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

""" Junction and endpoint detection on the one-pixel skeleton of the ink. """

from typing import List, Tuple

import numpy as np
from skimage.morphology import skeletonize

from modules.anchoring.anchors import Anchor, AnchorConfig, AnchorKind, deduplicate
from modules.anchoring.clustering import cluster_points
from modules.anchoring.edges import EdgeMap
from modules.program import Point2D

JUNCTION_SCORE = 1.0
ENDPOINT_SCORE = 0.5


def thin(mask: np.ndarray) -> np.ndarray:
    """ Morphological thinning to unit width. """
    if not mask.any():
        return np.zeros(mask.shape, dtype=bool)
    return skeletonize(mask.astype(bool))


def neighbour_ring(skeleton: np.ndarray) -> List[np.ndarray]:
    """ The eight neighbour planes in circular order N, NE, E, SE, S, SW, W, NW. """
    padded = np.pad(skeleton.astype(np.int8), 1)
    return [padded[:-2, 1:-1], padded[:-2, 2:], padded[1:-1, 2:], padded[2:, 2:],
            padded[2:, 1:-1], padded[2:, :-2], padded[1:-1, :-2], padded[:-2, :-2]]


def crossing_numbers(skeleton: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ Crossing number and neighbour count of every pixel of the skeleton. """
    ring = neighbour_ring(skeleton)
    transitions = sum(np.abs(ring[idx] - ring[(idx + 1) % 8]) for idx in range(8))
    count = sum(ring)
    crossing = (transitions // 2) * skeleton
    return crossing, count * skeleton


def _clustered(pixels: np.ndarray, radius: float, kind: AnchorKind,
               score: float) -> List[Anchor]:
    anchors = []
    for members in cluster_points(pixels, radius):
        centroid = pixels[members].mean(axis=0)
        anchors.append(Anchor(Point2D(float(centroid[0]), float(centroid[1])), score, kind))
    return anchors


def detect_junctions(edges: EdgeMap, cfg: AnchorConfig = AnchorConfig(),
                     skeleton: np.ndarray = None) -> List[Anchor]:
    """ Junction anchors (crossing number >= 3) and endpoint anchors (crossing
    number 1) of the thinned edge mask, at most one per neighbourhood.

    Args:
        edges (EdgeMap): the edge pixels
        cfg (AnchorConfig): clustering radius
        skeleton (np.ndarray): precomputed thinning of ``edges.mask``
    """
    if edges.is_empty():
        return []
    if skeleton is None:
        skeleton = thin(edges.mask)
    crossing, count = crossing_numbers(skeleton)
    rows, cols = np.nonzero(skeleton & (crossing >= 3))
    junctions = np.stack([cols, rows], axis=1)
    rows, cols = np.nonzero(skeleton & (crossing == 1) & (count <= 2))
    endpoints = np.stack([cols, rows], axis=1)
    anchors = _clustered(junctions, cfg.junction_radius, AnchorKind.Junction, JUNCTION_SCORE)
    anchors += _clustered(endpoints, cfg.junction_radius, AnchorKind.Endpoint, ENDPOINT_SCORE)
    # chained clusters can leave centroids closer than the radius
    return deduplicate(anchors, cfg.junction_radius)
