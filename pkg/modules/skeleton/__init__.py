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

from .types import RelationKind, Relation, SegmentHypothesis, CircleHypothesis, \
    FittedPrimitives, GeoSkeleton, SkeletonConfig, SCHEMA_VERSION
from .residuals import relation_residual, residual_ratio, skeleton_geometry, program_geometry
from .fitting import fit_primitives, stroke_width
from .relations import mine_relations, accept_proposed, merge_relations
from .builder import verify_anchors, discover_relations, build_skeleton, SkeletonBuilder
