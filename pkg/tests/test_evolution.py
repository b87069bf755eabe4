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

from dataclasses import replace
import json

import pytest

from modules.anchoring import Anchor, AnchorKind
from modules.evolution import LoopConfig, LoopState, deterministic_program, parameters, \
    pattern_search, refine_step, run_loop, snap, synthesize_initial, with_parameters
from modules.metrics import ObjectiveBreakdown, MetricBundle, ObjectiveEvaluator
from modules.program import Circle, PointMark, Point2D, Program, Segment
from modules.renderer import Raster, render
from modules.skeleton import GeoSkeleton, SegmentHypothesis
from modules.vep import attribute_regions, project_errors
from tests.conftest import segment

GROUND_TRUTH = Program(200, 200, (segment('s1', 50, 100, 150, 100),))


def displaced(x2: float, y2: float) -> Program:
    return Program(200, 200, (segment('s1', 50, 100, x2, y2),))


def fine_tune(program: Program):
    evaluator = ObjectiveEvaluator(render(GROUND_TRUTH))
    tuned, q = pattern_search(evaluator, program, 's1', focus=program.get('s1').shape.p2,
                              budget=50)
    return tuned.get('s1').shape, q, evaluator.probes


@pytest.mark.parametrize('k', [4, 8, 16, 30])
def test_fine_tuning_recovers_extended_endpoint(k):
    shape, q, probes = fine_tune(displaced(150 + k, 100))
    assert shape.p2.distance_to(Point2D(150, 100)) <= 1.0
    assert shape.p1 == Point2D(50, 100)
    assert probes <= 50


@pytest.mark.parametrize('k', [4, 8])
def test_fine_tuning_recovers_lifted_endpoint(k):
    shape, q, probes = fine_tune(displaced(150, 100 + k))
    assert shape.p2.distance_to(Point2D(150, 100)) <= 1.0
    assert q == 0.0
    assert probes <= 50


def test_pattern_search_ignores_unknown_primitive():
    evaluator = ObjectiveEvaluator(render(GROUND_TRUTH))
    program, q = pattern_search(evaluator, GROUND_TRUTH, 'nope')
    assert program is GROUND_TRUTH
    assert q == 0.0


def test_parameters_round_trip():
    circle = Circle(Point2D(10, 20), 5)
    assert parameters(circle) == [10, 20, 5]
    assert with_parameters(circle, [1.0, 2.0, 3.0]) == Circle(Point2D(1, 2), 3)
    seg = Segment(Point2D(0, 0), Point2D(4, 4))
    assert with_parameters(seg, [1.0, 1.0, 5.0, 5.0]) == Segment(Point2D(1, 1), Point2D(5, 5))


def test_snap_to_nearest_anchor():
    anchors = [Anchor(Point2D(10, 10), 1.0), Anchor(Point2D(12, 10), 1.0)]
    assert snap(Point2D(11.8, 10.0), anchors) == Point2D(12, 10)
    assert snap(Point2D(40, 40), anchors) == Point2D(40, 40)


def test_deterministic_program_from_skeleton():
    skeleton = GeoSkeleton(
        anchors=(Anchor(Point2D(50, 50), 1.0, AnchorKind.Corner, id='P1'),
                 Anchor(Point2D(150, 50), 1.0, AnchorKind.Endpoint, id='P2')),
        segments=(SegmentHypothesis('S1', Point2D(51, 49), Point2D(150, 50), 90),),
        stroke_width=3.0)
    program = deterministic_program(skeleton, (200, 100))
    assert (program.width, program.height) == (200, 100)
    assert program.ids() == ['S1', 'P1']
    assert program.get('S1').shape == Segment(Point2D(50, 50), Point2D(150, 50))
    assert isinstance(program.get('P1').shape, PointMark)
    assert program.get('S1').style.stroke_width == 3.0


def test_empty_skeleton_gives_empty_program():
    assert len(deterministic_program(GeoSkeleton(), (64, 64))) == 0


class ScriptedAuthor(object):
    def __init__(self, program):
        self.program = program

    def generate_program(self, skeleton, text, observation):
        return self.program


def test_agent_synthesis_must_validate():
    skeleton = GeoSkeleton(segments=(SegmentHypothesis('S1', Point2D(10, 10), Point2D(90, 10),
                                                       80),))
    proposal = Program(100, 100, (segment('a', 10, 10, 90, 90),))
    assert synthesize_initial(skeleton, canvas=(100, 100),
                              agent=ScriptedAuthor(proposal)) == proposal
    broken = Program(100, 100, (segment('a', 10, 10, 10, 10),))
    fallback = synthesize_initial(skeleton, canvas=(100, 100), agent=ScriptedAuthor(broken))
    assert fallback.ids() == ['S1']
    wrong_size = Program(50, 50, (segment('a', 10, 10, 40, 40),))
    assert synthesize_initial(skeleton, canvas=(100, 100),
                              agent=ScriptedAuthor(wrong_size)).ids() == ['S1']


def test_loop_config_validation():
    with pytest.raises(ValueError):
        LoopConfig(epsilon_hd=0.0)
    with pytest.raises(ValueError):
        LoopConfig(step_init=0.25, step_min=0.5)
    with pytest.raises(ValueError):
        LoopConfig(max_iterations=-1)


def test_loop_state_tracks_best_and_stalls():
    state = LoopState()
    bundle = MetricBundle(1.0, 2.0, 0.9, (10, 10))
    for t, q in enumerate((0.5, 0.2, 0.2, 0.2)):
        state.iteration = t
        state.record(Program(10, 10), ObjectiveBreakdown(q, 0.0, 0.0, q), bundle, None)
    assert state.best_q == 0.2
    assert state.stalled(1e-6, 2)
    assert not state.stalled(1e-6, 3)
    lines = state.history_jsonl().splitlines()
    assert json.loads(lines[0]) == {'t': 0, 'cd': 1.0, 'hd': 2.0, 'q': 0.5}


def test_loop_accepts_exact_initial_program(triangle_program, triangle_image, quiet_logger):
    best, state = run_loop(triangle_image, skeleton=GeoSkeleton(),
                           initial_program=triangle_program, logger=quiet_logger)
    assert best == triangle_program
    assert state.stop_reason == 'converged'
    assert [(h.t, h.cd, h.hd) for h in state.history] == [(0, 0.0, 0.0)]
    assert len(state.reports) == 1


def test_loop_corrects_drifted_segment(triangle_program, triangle_image, quiet_logger):
    drifted = triangle_program.with_primitives(
        [segment('s1', 40, 152, 160, 152)] + list(triangle_program.primitives[1:]))
    best, state = run_loop(triangle_image, skeleton=GeoSkeleton(), initial_program=drifted,
                           logger=quiet_logger)
    assert state.best_q < state.history[0].q
    assert state.best_q == min(h.q for h in state.history)
    assert best == state.best_program
    assert 'fine-tuning' in state.history[1].note


def test_phase_one_only(triangle_program, triangle_image, quiet_logger):
    drifted = triangle_program.with_primitives(
        [segment('s1', 40, 140, 160, 140)] + list(triangle_program.primitives[1:]))
    best, state = run_loop(triangle_image, skeleton=GeoSkeleton(), initial_program=drifted,
                           cfg=LoopConfig(max_iterations=0), logger=quiet_logger)
    assert best == drifted
    assert len(state.history) == 1
    assert state.stop_reason == 'iteration limit'


def test_single_iteration_history(triangle_program, triangle_image, quiet_logger):
    drifted = triangle_program.with_primitives(
        [segment('s1', 40, 140, 160, 140)] + list(triangle_program.primitives[1:]))
    _, state = run_loop(triangle_image, skeleton=GeoSkeleton(), initial_program=drifted,
                        cfg=LoopConfig(max_iterations=1), logger=quiet_logger)
    assert [h.t for h in state.history] == [0, 1]
    assert state.best_q <= state.history[0].q


def test_blank_observation_stalls(quiet_logger):
    best, state = run_loop(Raster.blank(100, 100), logger=quiet_logger)
    assert len(best) == 0
    assert state.stop_reason == 'stalled'
    assert len(state.history) == 3


def inspected(program: Program, observation) -> LoopState:
    report = attribute_regions(project_errors(render(program), observation), program)
    state = LoopState()
    state.record(program, ObjectiveBreakdown(0.0, 0.0, 0.0, 0.0), report.metrics, report)
    return state


def test_refine_completes_missing_segment(triangle_program, triangle_image):
    partial = triangle_program.without('s1')
    refined = refine_step(inspected(partial, triangle_image), triangle_image, None)
    assert len(refined) == 3
    added = refined.primitives[-1].shape
    assert isinstance(added, Segment)
    assert added.p1.y == pytest.approx(160.0, abs=0.5)
    assert added.p2.y == pytest.approx(160.0, abs=0.5)
    evaluator = ObjectiveEvaluator(triangle_image)
    assert evaluator.score(refined) < evaluator.score(partial)


def test_refine_prunes_hallucinated_segment(triangle_program, triangle_image):
    extra = triangle_program.appended(segment('s4', 20, 20, 20, 100))
    refined = refine_step(inspected(extra, triangle_image), triangle_image, None)
    assert refined.ids() == ['s1', 's2', 's3']


def test_refine_corrects_stroke_width(triangle_program, triangle_image):
    base = triangle_program.get('s1')
    thick = triangle_program.replaced(base.with_style(replace(base.style, stroke_width=5.0)))
    refined = refine_step(inspected(thick, triangle_image), triangle_image, None)
    assert refined.get('s1').style.stroke_width < 5.0
    evaluator = ObjectiveEvaluator(triangle_image)
    assert evaluator.score(refined) < evaluator.score(thick)


def test_refine_keeps_exact_program(triangle_program, triangle_image):
    state = inspected(triangle_program, triangle_image)
    assert refine_step(state, triangle_image, None) is triangle_program
