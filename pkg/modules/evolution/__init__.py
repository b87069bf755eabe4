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

from .config import LoopConfig, RefinerMode
from .state import LoopState, HistoryEntry
from .synthesis import synthesize_initial, deterministic_program, snap, ProgramSynthesizer
from .search import pattern_search, parameters, with_parameters
from .refinement import Refinement, refine_step, propose_refinement, deterministic_refinement, \
    stroke_coverage, missing_pixels, Refiner
from .loop import run_loop, build_system
