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

from .anchors import Anchor, AnchorKind, AnchorSource, AnchorConfig, anchors_to_json, deduplicate, \
    anchors_from_json, sort_anchors
from .edges import EdgeMap, extract_edge_map, DEFAULT_EDGE_THRESHOLD
from .corners import detect_corners
from .junctions import detect_junctions, thin
from .clustering import cluster_points
from .extraction import extract_raw_anchors, raw_anchors_from_edges
