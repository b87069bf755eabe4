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

""" Derivative-free coordinate fine-tuning of one primitive. """

from dataclasses import replace
from typing import List, Tuple

from modules.metrics import ObjectiveEvaluator
from modules.program import Arc, Circle, Point2D, Program, validate_consistency

IMPROVEMENT = 1e-12


def parameters(shape) -> List[float]:
    """ Flat coordinate vector of a shape: its control points, then the radius
    of round shapes. """
    values = [c for point in shape.control_points() for c in (point.x, point.y)]
    if isinstance(shape, (Circle, Arc)):
        values.append(shape.radius)
    return values


def with_parameters(shape, values: List[float]):
    count = len(shape.control_points())
    points = [Point2D(values[2 * idx], values[2 * idx + 1]) for idx in range(count)]
    rebuilt = shape.with_control_points(points)
    if isinstance(shape, (Circle, Arc)):
        rebuilt = replace(rebuilt, radius=values[-1])
    return rebuilt


def coordinate_order(shape, focus: Point2D = None) -> List[int]:
    """ Parameter indices, control points nearest to ``focus`` first. """
    points = shape.control_points()
    order = list(range(len(points)))
    if focus is not None:
        order.sort(key=lambda idx: (points[idx].distance_to(focus), idx))
    indices = [c for idx in order for c in (2 * idx, 2 * idx + 1)]
    if isinstance(shape, (Circle, Arc)):
        indices.append(2 * len(points))
    return indices


class _Probe(object):

    def __init__(self, evaluator: ObjectiveEvaluator, program: Program, prim_id: str,
                 budget: int):
        self.evaluator = evaluator
        self.program = program
        self.prim = program.get(prim_id)
        self.budget_end = evaluator.probes + budget
        self.values = parameters(self.prim.shape)
        self.best = evaluator.score(program)

    def exhausted(self) -> bool:
        return self.evaluator.probes >= self.budget_end

    def candidate(self, values: List[float]):
        shape = with_parameters(self.prim.shape, values)
        if isinstance(shape, (Circle, Arc)) and shape.radius <= 0:
            return None
        program = self.program.replaced(self.prim.with_shape(shape))
        if validate_consistency(program):
            return None
        return program

    def attempt(self, index: int, delta: float) -> bool:
        """ Tries one move and keeps it when it lowers the objective. """
        if self.exhausted():
            return False
        values = list(self.values)
        values[index] += delta
        program = self.candidate(values)
        if program is None:
            return False
        q = self.evaluator.score(program)
        if q < self.best - IMPROVEMENT:
            self.best, self.values, self.program = q, values, program
            self.prim = program.get(self.prim.id)
            return True
        return False


def pattern_search(evaluator: ObjectiveEvaluator, program: Program, prim_id: str,
                   focus: Point2D = None, step_init: float = 8.0, step_min: float = 0.5,
                   budget: int = 50) -> Tuple[Program, float]:
    """ Axis-aligned pattern search on the coordinates of one primitive.

    Each coordinate is probed at plus and minus the current step (the last
    successful direction first); an accepted move is repeated while it keeps
    improving. The step halves after a pass without improvement and the
    search ends below ``step_min`` or when ``budget`` objective evaluations
    are spent.

    Returns:
        Tuple[Program, float]: the improved program and its objective value
    """
    if program.get(prim_id) is None:
        return program, evaluator.score(program)
    probe = _Probe(evaluator, program, prim_id, budget)
    order = coordinate_order(probe.prim.shape, focus)
    direction = {index: 1.0 for index in order}
    step = step_init
    while step >= step_min and not probe.exhausted():
        improved = False
        for index in order:
            for sign in (direction[index], -direction[index]):
                if probe.attempt(index, sign * step):
                    direction[index] = sign
                    improved = True
                    while probe.attempt(index, sign * step):
                        pass
                    break
        if not improved:
            step /= 2.0
    return probe.program, probe.best
