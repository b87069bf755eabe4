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

""" Configuration of the correction loop. """

from dataclasses import dataclass, field
from enum import Enum

from modules.metrics import ObjectiveConfig
from modules.vep import InspectionConfig


class RefinerMode(Enum):
    Deterministic = 'det'
    Agent = 'agent'
    Hybrid = 'hybrid'


@dataclass(frozen=True)
class LoopConfig:
    """ Termination, search and action thresholds of the reconstruction loop.

    ``max_iterations`` counts correction steps; 0 evaluates the initial
    program only. Pixel values are in canvas pixels.
    """
    epsilon_hd: float = 5.0
    max_iterations: int = 10
    refiner_mode: RefinerMode = RefinerMode.Deterministic
    objective: ObjectiveConfig = field(default_factory=ObjectiveConfig)
    inspection: InspectionConfig = field(default_factory=InspectionConfig)
    step_init: float = 8.0
    step_min: float = 0.5
    probe_budget: int = 50
    snap_radius: float = 5.0
    line_elongation: float = 3.0
    prune_coverage: float = 0.6
    stall_tolerance: float = 1e-6
    stall_iterations: int = 2

    def __post_init__(self):
        if self.epsilon_hd <= 0:
            raise ValueError('epsilon_hd must be positive')
        if self.max_iterations < 0:
            raise ValueError('max_iterations must not be negative')
        if not 0 < self.step_min <= self.step_init:
            raise ValueError('expected 0 < step_min <= step_init')
        if self.probe_budget < 1:
            raise ValueError('probe_budget must be at least 1')
