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

""" Inspection stage of the reconstruction loop. """

from modules.module import Module
from modules.program import Program
from modules.renderer import Raster
from modules.vep.attribution import attribute_regions
from modules.vep.projection import project_errors
from modules.vep.types import InspectionConfig
from utils.logger import GeoLogger


class Inspector(Module):
    """ Compares ``rendered`` with ``observation`` and emits an attributed ``report``. """

    def __init__(self, cfg: InspectionConfig = InspectionConfig(),
                 logger: GeoLogger = GeoLogger()):
        Module.__init__(self, logger=logger)
        self.cfg = cfg

    def forward(self, system, rendered: Raster = None, observation: Raster = None,
                program: Program = None, **kwargs) -> dict:
        iteration = system.num_iterations if system is not None else 0
        report = project_errors(rendered, observation, None, self.cfg, iteration)
        if program is not None:
            report = attribute_regions(report, program, self.cfg)
        self.logger.iteration('inspect', report)
        return {'report': report, 'metrics': report.metrics}
