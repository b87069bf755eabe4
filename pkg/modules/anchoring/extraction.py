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

""" Raw anchor extraction: the union of all detectors, deduplicated. """

from typing import List

from modules.anchoring.anchors import Anchor, AnchorConfig, deduplicate
from modules.anchoring.corners import detect_corners
from modules.anchoring.edges import EdgeMap, extract_edge_map
from modules.anchoring.junctions import detect_junctions
from modules.renderer import Raster


def raw_anchors_from_edges(edges: EdgeMap, cfg: AnchorConfig = AnchorConfig()) -> List[Anchor]:
    return deduplicate(detect_corners(edges, cfg) + detect_junctions(edges, cfg),
                       cfg.merge_radius)


def extract_raw_anchors(image: Raster, cfg: AnchorConfig = AnchorConfig()) -> List[Anchor]:
    """ High-recall anchor candidates of an observed figure.

    Args:
        image (Raster): the observation
        cfg (AnchorConfig): operator parameters

    Returns:
        List[Anchor]: corner, junction and endpoint candidates ordered by (y, x)
    """
    return raw_anchors_from_edges(extract_edge_map(image, cfg.edge_threshold), cfg)
