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

from .exceptions import UnknownEntry, InvalidTransition, DuplicateEntry
from .types import EntryStatus, AuditRecord, Quadruplet, Manifest
from .storage import load_manifest, save_manifest, loads_manifest, dumps_manifest, updating
from .pipeline import DatasetConfig, build_quadruplet, build_manifest, filter_manifest, \
    review_mark, verify_manifest, summarize, input_images
