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

""" Binarized edge-pixel sets of rasters (ink on white). """

import numpy as np

from modules.renderer import Raster

DEFAULT_EDGE_THRESHOLD = 200


class EdgeMap(object):
    """ The set of edge pixels of a raster, kept as a boolean (height, width)
    mask together with the luma threshold it was extracted with. """

    def __init__(self, mask: np.ndarray, threshold: int = DEFAULT_EDGE_THRESHOLD):
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 2:
            raise ValueError('edge mask must be two dimensional')
        self._mask = np.array(mask, copy=True)
        self._mask.flags.writeable = False
        self.threshold = threshold
        self._points = None

    @classmethod
    def from_points(cls, points, width: int, height: int,
                    threshold: int = DEFAULT_EDGE_THRESHOLD) -> 'EdgeMap':
        """ Builds an edge map from an iterable of integer (x, y) pixels. """
        mask = np.zeros((height, width), dtype=bool)
        for x, y in points:
            mask[int(y), int(x)] = True
        return cls(mask, threshold)

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def width(self) -> int:
        return int(self._mask.shape[1])

    @property
    def height(self) -> int:
        return int(self._mask.shape[0])

    def points(self) -> np.ndarray:
        """ (N, 2) array of (x, y) edge pixels in row-major order. """
        if self._points is None:
            rows, cols = np.nonzero(self._mask)
            self._points = np.stack([cols, rows], axis=1).astype(np.int64)
        return self._points

    def is_empty(self) -> bool:
        return not self._mask.any()

    def __len__(self):
        return int(np.count_nonzero(self._mask))

    def __eq__(self, other):
        if not isinstance(other, EdgeMap):
            return NotImplemented
        return self._mask.shape == other._mask.shape and bool(np.array_equal(self._mask,
                                                                              other._mask))

    def __repr__(self):
        return 'EdgeMap({}x{}, {} edge pixels)'.format(self.width, self.height, len(self))


def extract_edge_map(raster: Raster, threshold: int = DEFAULT_EDGE_THRESHOLD) -> EdgeMap:
    """ Marks every pixel whose luma is strictly below ``threshold``. """
    return EdgeMap(raster.luma() < threshold, threshold)
