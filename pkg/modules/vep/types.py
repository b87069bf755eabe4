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

""" Value types of the visual difference map. """

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple
import json

import numpy as np

from modules.metrics import MetricBundle
from modules.program import Point2D
from modules.renderer import Raster


class RegionClass(Enum):
    Missing = 'missing'
    Hallucination = 'hallucination'
    Drift = 'drift'
    StyleMismatch = 'style_mismatch'


# diff image colors (RGB)
MATCHED_COLOR = (128, 128, 128)
REGION_COLORS = {
    RegionClass.Missing: (255, 0, 0),
    RegionClass.Hallucination: (0, 0, 255),
    RegionClass.Drift: (255, 0, 255),
    RegionClass.StyleMismatch: (255, 140, 0),
}


@dataclass(frozen=True)
class InspectionConfig:
    """ Thresholds of the error projection.

    Args:
        tau (int): match radius in pixels; edges closer than this (in both axes) match
        drift_radius (float): largest centroid distance of a fused missing/extra pair
        size_ratio (float): largest relative pixel count difference of a fused pair
        width_delta (float): local stroke width difference that counts as a style error
        min_style_pixels (int): smallest style mismatch component kept
        attribution_radius (float): largest region-to-primitive distance of an attribution
        edge_threshold (int): ink threshold of the edge maps
    """
    tau: int = 2
    drift_radius: float = 15.0
    size_ratio: float = 0.5
    width_delta: float = 1.5
    min_style_pixels: int = 3
    attribution_radius: float = 25.0
    edge_threshold: int = 200


@dataclass(frozen=True)
class DiffRegion:
    """ One connected area of disagreement between reconstruction and observation.

    ``bbox`` is (x0, y0, x1, y1) with inclusive bounds; ``pixels`` holds the
    (x, y) pixels of the region and is not part of the JSON form.
    """
    classification: RegionClass
    bbox: Tuple[int, int, int, int]
    centroid: Point2D
    pixel_count: int
    local_cd: float
    nearest_primitive_id: Optional[str] = None
    pixels: np.ndarray = field(default=None, compare=False, repr=False)

    @classmethod
    def from_pixels(cls, classification: RegionClass, pixels: np.ndarray,
                    local_cd: float) -> 'DiffRegion':
        xs, ys = pixels[:, 0], pixels[:, 1]
        return cls(classification,
                   (int(xs.min()), int(ys.min()), int(xs.max()), int(ys.max())),
                   Point2D(float(xs.mean()), float(ys.mean())), int(len(pixels)),
                   float(local_cd), None, pixels)

    def attributed(self, prim_id: Optional[str]) -> 'DiffRegion':
        return replace(self, nearest_primitive_id=prim_id)

    def principal_axis(self) -> Tuple[np.ndarray, np.ndarray, float]:
        """ Centroid, unit direction of the largest spread and the elongation
        (ratio of the standard deviations along and across it). """
        points = self.pixels.astype(np.float64)
        center = points.mean(axis=0)
        if len(points) < 2:
            return center, np.array([1.0, 0.0]), 1.0
        _, spread, vt = np.linalg.svd(points - center, full_matrices=False)
        across = spread[1] if len(spread) > 1 else 0.0
        elongation = float(spread[0] / across) if across > 1e-9 else float('inf')
        return center, vt[0], elongation

    def to_dict(self) -> dict:
        return {'classification': self.classification.value, 'bbox': list(self.bbox),
                'centroid': [round(self.centroid.x, 2), round(self.centroid.y, 2)],
                'pixel_count': self.pixel_count, 'local_cd': round(self.local_cd, 4),
                'nearest_primitive_id': self.nearest_primitive_id}


def sort_regions(regions) -> list:
    return sorted(regions, key=lambda r: (-r.pixel_count, r.centroid.y, r.centroid.x,
                                          r.classification.value))


@dataclass(frozen=True)
class DiffReport:
    """ The classified difference map of one iteration, largest region first. """
    regions: Tuple[DiffRegion, ...]
    metrics: MetricBundle
    iteration: int
    diff_image: Raster = field(default=None, compare=False, repr=False)

    def of_class(self, classification: RegionClass) -> list:
        return [region for region in self.regions if region.classification is classification]

    def is_clean(self) -> bool:
        return not self.regions

    def to_dict(self) -> dict:
        return {'iteration': self.iteration, 'metrics': self.metrics.to_dict(),
                'regions': [region.to_dict() for region in self.regions]}

    def to_json(self, indent: int = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def __str__(self):
        counts = {}
        for region in self.regions:
            counts[region.classification.value] = counts.get(region.classification.value, 0) + 1
        return 'DiffReport(t={}, cd={:.3f}, hd={:.3f}, regions={})'.format(
            self.iteration, self.metrics.cd, self.metrics.hd, counts)
