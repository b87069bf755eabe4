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

""" The generate, execute, inspect and correct loop. """

from typing import Tuple

from geosystem import ReconstructionSystem
from modules.evolution.config import LoopConfig
from modules.evolution.refinement import Refiner
from modules.evolution.state import LoopState
from modules.evolution.synthesis import ProgramSynthesizer
from modules.program import Program
from modules.renderer import ProgramExecutor, Raster
from modules.skeleton import GeoSkeleton, SkeletonBuilder
from modules.vep import Inspector
from utils.logger import GeoLogger


def build_system(cfg: LoopConfig = LoopConfig(), agent=None,
                 logger: GeoLogger = GeoLogger()) -> ReconstructionSystem:
    """ Skeleton building and synthesis at start, then execution, inspection
    and correction in every iteration. """
    return ReconstructionSystem(SkeletonBuilder(agent=agent, logger=logger),
                                ProgramSynthesizer(cfg.snap_radius, agent, logger),
                                ProgramExecutor(logger),
                                Inspector(cfg.inspection, logger),
                                Refiner(cfg, agent, logger),
                                logger=logger)


def run_loop(observation: Raster, text: str = None, skeleton: GeoSkeleton = None,
             cfg: LoopConfig = LoopConfig(), initial_program: Program = None, agent=None,
             logger: GeoLogger = GeoLogger()) -> Tuple[Program, LoopState]:
    """ Reconstructs a program for the observation.

    Stops when the Hausdorff distance falls to ``epsilon_hd``, after
    ``max_iterations`` corrections, or when the objective stalls.

    Args:
        observation (Raster): the image to reconstruct
        text (str): optional accompanying problem text
        skeleton (GeoSkeleton): skeleton of the observation; built when absent
        cfg (LoopConfig): loop configuration
        initial_program (Program): replaces the synthesized C(0) when given
        agent: optional agent used for synthesis and correction

    Returns:
        Tuple[Program, LoopState]: the best program by objective and the final state
    """
    system = build_system(cfg, agent, logger)
    kwargs = system.run_reconstruction(max_iterations=cfg.max_iterations + 1,
                                       observation=observation, text=text, skeleton=skeleton,
                                       program=initial_program)
    state = kwargs['state']
    best = state.best_program if state.best_program is not None else kwargs.get('program')
    logger.result('best q={:.6f} after {} iterations'.format(state.best_q, len(state.history)))
    return best, state
