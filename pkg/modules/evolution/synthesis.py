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

""" Initial program synthesis from a geometric skeleton. """

from typing import List, Tuple

from modules.anchoring import Anchor, AnchorKind
from modules.module import Module
from modules.program import Arc, Circle, PointMark, Point2D, Primitive, Program, Segment, \
    Style, normalize_angle, validate_consistency
from modules.program.validation import MAX_STROKE_WIDTH, MIN_STROKE_WIDTH
from modules.skeleton import GeoSkeleton
from utils.exceptions import GeoError
from utils.logger import GeoLogger

SNAP_RADIUS = 5.0


def snap(point: Point2D, anchors: List[Anchor], radius: float = SNAP_RADIUS) -> Point2D:
    """ The nearest anchor position within ``radius``, else the point itself. """
    best, best_dist = point, radius
    for anchor in anchors:
        dist = point.distance_to(anchor.pos)
        if dist <= best_dist:
            best, best_dist = anchor.pos, dist
    return best


def skeleton_style(skeleton: GeoSkeleton) -> Style:
    width = min(max(skeleton.stroke_width, MIN_STROKE_WIDTH), MAX_STROKE_WIDTH)
    return Style(stroke_width=float(width))


def _drop_invalid(program: Program) -> Program:
    bad = {v.primitive_id for v in validate_consistency(program)}
    if not bad:
        return program
    return program.with_primitives(p for p in program.primitives if p.id not in bad)


def deterministic_program(skeleton: GeoSkeleton, canvas: Tuple[int, int] = (1000, 1000),
                          snap_radius: float = SNAP_RADIUS) -> Program:
    """ One statement per fitted primitive and one point per corner or junction
    anchor, ids taken over from the skeleton. """
    style = skeleton_style(skeleton)
    anchors = list(skeleton.anchors)
    primitives = []
    for seg in skeleton.segments:
        p1, p2 = snap(seg.p1, anchors, snap_radius), snap(seg.p2, anchors, snap_radius)
        primitives.append(Primitive(seg.id, Segment(p1, p2), style))
    for circle in skeleton.circles:
        if circle.is_partial:
            shape = Arc(circle.center, circle.radius, normalize_angle(circle.start_deg),
                        normalize_angle(circle.end_deg))
        else:
            shape = Circle(circle.center, circle.radius)
        primitives.append(Primitive(circle.id, shape, style))
    for anchor in anchors:
        if anchor.kind in (AnchorKind.Corner, AnchorKind.Junction):
            primitives.append(Primitive(anchor.id, PointMark(anchor.pos), style))
    program = Program(width=canvas[0], height=canvas[1], primitives=tuple(primitives),
                      defaults=style)
    return _drop_invalid(program)


def synthesize_initial(skeleton: GeoSkeleton, text: str = None,
                       canvas: Tuple[int, int] = (1000, 1000), agent=None, observation=None,
                       snap_radius: float = SNAP_RADIUS, logger: GeoLogger = None) -> Program:
    """ The initial program C(0) of the loop.

    An agent, when given, may propose the program instead; its proposal is
    used only if it parses and passes validation. An empty skeleton yields an
    empty program.
    """
    program = deterministic_program(skeleton, canvas, snap_radius)
    if agent is None or skeleton.is_empty():
        return program
    try:
        proposal = agent.generate_program(skeleton, text, observation)
    except GeoError as err:
        if logger is not None:
            logger.info('agent synthesis rejected: {}'.format(err))
        return program
    if (proposal.width, proposal.height) != tuple(canvas) or validate_consistency(proposal):
        if logger is not None:
            logger.info('agent synthesis rejected: invalid program')
        return program
    return proposal


class ProgramSynthesizer(Module):
    """ Provides the initial ``program`` unless one was handed in. """

    def __init__(self, snap_radius: float = SNAP_RADIUS, agent=None,
                 logger: GeoLogger = GeoLogger()):
        Module.__init__(self, logger=logger)
        self.snap_radius = snap_radius
        self.agent = agent

    def start_reconstruction(self, skeleton: GeoSkeleton = None, observation=None,
                             program: Program = None, text: str = None, **kwargs):
        if program is not None or skeleton is None:
            return {}
        canvas = (observation.width, observation.height) if observation is not None \
            else (1000, 1000)
        program = synthesize_initial(skeleton, text, canvas, self.agent, observation,
                                     self.snap_radius, self.logger)
        self.logger.info('initial program: {} primitives'.format(len(program)))
        return {'program': program}

    def forward(self, system, **kwargs) -> dict:
        return {}
