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

""" Links difference regions to the program primitive they most likely concern. """

from dataclasses import replace
from typing import Dict, Optional

import numpy as np
from scipy.ndimage import distance_transform_edt

from modules.program import Program, PrimitiveKind
from modules.renderer import primitive_mask
from modules.vep.types import DiffRegion, DiffReport, InspectionConfig, sort_regions


def envelope_fields(program: Program) -> Dict[str, np.ndarray]:
    """ Distance to the painted pixels of each drawable primitive. """
    fields = {}
    for prim in program.primitives:
        if prim.kind is PrimitiveKind.Label:
            continue
        mask = primitive_mask(prim, program.width, program.height)
        if mask.any():
            fields[prim.id] = distance_transform_edt(~mask)
    return fields


def region_distance(region: DiffRegion, field: np.ndarray) -> float:
    """ Smaller of the centroid distance and the median pixel distance, so
    that a region lying on a curved stroke counts as close to it. """
    height, width = field.shape
    cx = min(max(int(round(region.centroid.x)), 0), width - 1)
    cy = min(max(int(round(region.centroid.y)), 0), height - 1)
    on_pixels = float(np.median(field[region.pixels[:, 1], region.pixels[:, 0]]))
    return min(float(field[cy, cx]), on_pixels)


def nearest_primitive(region: DiffRegion, fields: Dict[str, np.ndarray],
                      radius: float) -> Optional[str]:
    best, best_dist = None, None
    for prim_id, field in fields.items():
        dist = region_distance(region, field)
        if dist <= radius and (best_dist is None or dist < best_dist):
            best, best_dist = prim_id, dist
    return best


def attribute_regions(report: DiffReport, program: Program,
                      cfg: InspectionConfig = InspectionConfig()) -> DiffReport:
    """ Sets ``nearest_primitive_id`` of every region to the primitive whose
    rendered envelope is nearest, within ``attribution_radius``; ties go to
    the earlier statement. """
    if not report.regions:
        return report
    fields = envelope_fields(program)
    regions = [region.attributed(nearest_primitive(region, fields, cfg.attribution_radius))
               for region in report.regions]
    return replace(report, regions=tuple(sort_regions(regions)))
