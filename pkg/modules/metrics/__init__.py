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

from .exceptions import EmptyEdgeSet, DimensionMismatch
from .distances import DistanceField, chamfer_distance, hausdorff_distance, compare_edges, \
    directed_distances, brute_force_distances
from .ssim import ssim
from .bundle import MetricBundle, measure, evaluate_pairs, diagonal
from .objective import ObjectiveConfig, ObjectiveBreakdown, ObjectiveEvaluator, objective
