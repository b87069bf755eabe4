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

""" Structure-tensor corner response with non-maximum suppression. """

from typing import List

import numpy as np
from scipy import ndimage

from modules.anchoring.anchors import Anchor, AnchorConfig, AnchorKind, sort_anchors
from modules.anchoring.edges import EdgeMap
from modules.program import Point2D


def corner_response(mask: np.ndarray, cfg: AnchorConfig = AnchorConfig()) -> np.ndarray:
    """ det(M) - k * trace(M)^2 of the windowed structure tensor M of the
    (smoothed) edge mask. """
    image = mask.astype(np.float64)
    if cfg.harris_sigma > 0:
        image = ndimage.gaussian_filter(image, cfg.harris_sigma)
    grad_x = ndimage.sobel(image, axis=1)
    grad_y = ndimage.sobel(image, axis=0)
    sxx = ndimage.uniform_filter(grad_x * grad_x, size=cfg.harris_window)
    syy = ndimage.uniform_filter(grad_y * grad_y, size=cfg.harris_window)
    sxy = ndimage.uniform_filter(grad_x * grad_y, size=cfg.harris_window)
    return sxx * syy - sxy * sxy - cfg.harris_k * (sxx + syy) ** 2


def suppress_non_maxima(response: np.ndarray, radius: float, floor: float) -> List[tuple]:
    """ Local maxima of ``response`` above ``floor``, greedily thinned so no
    two kept maxima are closer than ``radius``.

    Returns:
        List[tuple]: (x, y, value) triples, strongest first
    """
    size = 2 * int(np.ceil(radius)) + 1
    peaks = (response == ndimage.maximum_filter(response, size=size)) & (response >= floor) & \
        (response > 0)
    rows, cols = np.nonzero(peaks)
    values = response[rows, cols]
    order = np.lexsort((cols, rows, -values))
    kept = []
    for idx in order:
        x, y = int(cols[idx]), int(rows[idx])
        if all((x - kx) ** 2 + (y - ky) ** 2 >= radius * radius for kx, ky, _ in kept):
            kept.append((x, y, float(values[idx])))
    return kept


def detect_corners(edges: EdgeMap, cfg: AnchorConfig = AnchorConfig()) -> List[Anchor]:
    """ Corner anchors of an edge map; score is the response relative to the
    strongest corner of the image. """
    if edges.is_empty():
        return []
    response = corner_response(edges.mask, cfg)
    peak = float(response.max())
    if peak <= 0:
        return []
    maxima = suppress_non_maxima(response, cfg.nms_radius, cfg.relative_threshold * peak)
    anchors = [Anchor(Point2D(float(x), float(y)), min(1.0, value / peak), AnchorKind.Corner)
               for x, y, value in maxima]
    return sort_anchors(anchors)
