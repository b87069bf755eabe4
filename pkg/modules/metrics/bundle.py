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

""" Per-pair metric bundle and the averaged comparison over a set of pairs. """

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple
import math

from modules.anchoring import EdgeMap, extract_edge_map
from modules.metrics.distances import DistanceField, compare_edges
from modules.metrics.exceptions import DimensionMismatch, EmptyEdgeSet
from modules.metrics.ssim import ssim
from modules.renderer import Raster


@dataclass(frozen=True)
class MetricBundle:
    """ Chamfer and Hausdorff distance (px), SSIM and the edge pixel counts
    of the reconstruction and the observation. """
    cd: float
    hd: float
    ssim: float
    edge_counts: Tuple[int, int]

    def to_dict(self) -> dict:
        return {'cd': round(self.cd, 6), 'hd': round(self.hd, 6), 'ssim': round(self.ssim, 6),
                'edge_counts': list(self.edge_counts)}

    @classmethod
    def from_dict(cls, entry: dict) -> 'MetricBundle':
        return cls(float(entry['cd']), float(entry['hd']), float(entry.get('ssim', 0.0)),
                   tuple(entry.get('edge_counts', (0, 0))))


def diagonal(width: int, height: int) -> float:
    return math.hypot(width, height)


def edge_distances(rec_edges: EdgeMap, obs_edges: EdgeMap,
                   obs_field: DistanceField = None) -> Tuple[float, float]:
    """ (cd, hd) where an empty side counts as the canvas diagonal. """
    try:
        return compare_edges(rec_edges, obs_edges, None, obs_field)
    except EmptyEdgeSet:
        worst = diagonal(obs_edges.width, obs_edges.height)
        return worst, worst


def measure(rec: Raster, obs: Raster, obs_edges: EdgeMap = None,
            obs_field: DistanceField = None) -> MetricBundle:
    """ Compares a reconstruction against the observation.

    Raises:
        DimensionMismatch: the rasters differ in size
    """
    if rec.shape != obs.shape:
        raise DimensionMismatch(rec.shape, obs.shape)
    obs_edges = obs_edges if obs_edges is not None else extract_edge_map(obs)
    rec_edges = extract_edge_map(rec)
    cd, hd = edge_distances(rec_edges, obs_edges, obs_field)
    return MetricBundle(cd, hd, ssim(rec, obs), (len(rec_edges), len(obs_edges)))


def evaluate_pairs(pairs: Iterable[Tuple[Raster, Raster]]) -> Tuple[List[MetricBundle],
                                                                    Dict[str, float]]:
    """ Measures every (reconstruction, observation) pair and averages CD, HD
    and SSIM over them. The averages are empty for an empty input. """
    bundles = [measure(rec, obs) for rec, obs in pairs]
    if not bundles:
        return bundles, {}
    count = float(len(bundles))
    means = {'cd': sum(b.cd for b in bundles) / count,
             'hd': sum(b.hd for b in bundles) / count,
             'ssim': sum(b.ssim for b in bundles) / count}
    return bundles, means
