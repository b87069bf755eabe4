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

""" Single-linkage grouping of nearby points. """

from typing import List

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage


def cluster_points(points: np.ndarray, radius: float) -> List[np.ndarray]:
    """ Groups points whose single-linkage distance is at most ``radius``.

    Args:
        points (np.ndarray): (N, 2) coordinates
        radius (float): linkage distance

    Returns:
        List[np.ndarray]: index arrays into ``points``, ordered by their
                          smallest member index
    """
    points = np.asarray(points, dtype=np.float64)
    if len(points) == 0:
        return []
    if len(points) == 1:
        return [np.array([0])]
    labels = fcluster(linkage(points, method='single'), t=radius, criterion='distance')
    groups = {}
    for idx, label in enumerate(labels):
        groups.setdefault(label, []).append(idx)
    return [np.array(members) for members in sorted(groups.values(), key=lambda m: m[0])]
