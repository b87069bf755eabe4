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

""" Windowed structural similarity on the luma plane. """

import numpy as np
from skimage.util import view_as_windows

from modules.metrics.exceptions import DimensionMismatch
from modules.renderer import Raster

WINDOW = 8
STRIDE = 4
C1 = (0.01 * 255) ** 2
C2 = (0.03 * 255) ** 2


def _windows(plane: np.ndarray) -> np.ndarray:
    height, width = plane.shape
    if height < WINDOW or width < WINDOW:
        # whole image as one window
        return plane[None, None, :, :]
    return view_as_windows(plane, (WINDOW, WINDOW), step=STRIDE)


def ssim(first: Raster, second: Raster) -> float:
    """ Mean of the local SSIM over 8x8 windows taken every 4 pixels, with
    population statistics inside each window.

    Raises:
        DimensionMismatch: the rasters differ in size
    """
    if first.shape != second.shape:
        raise DimensionMismatch(first.shape, second.shape)
    win_a = _windows(first.luma())
    win_b = _windows(second.luma())
    mean_a = win_a.mean(axis=(-2, -1), keepdims=True)
    mean_b = win_b.mean(axis=(-2, -1), keepdims=True)
    dev_a = win_a - mean_a
    dev_b = win_b - mean_b
    var_a = (dev_a * dev_a).mean(axis=(-2, -1))
    var_b = (dev_b * dev_b).mean(axis=(-2, -1))
    cov = (dev_a * dev_b).mean(axis=(-2, -1))
    mean_a = mean_a[..., 0, 0]
    mean_b = mean_b[..., 0, 0]
    numerator = (2.0 * mean_a * mean_b + C1) * (2.0 * cov + C2)
    denominator = (mean_a * mean_a + mean_b * mean_b + C1) * (var_a + var_b + C2)
    return float((numerator / denominator).mean())
