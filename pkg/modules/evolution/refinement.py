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

""" Correction step of the loop: turns an attributed difference report into an
edited program. """

from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np
from scipy.ndimage import binary_dilation

from modules.anchoring import extract_edge_map
from modules.metrics import ObjectiveEvaluator
from modules.module import Module
from modules.program import Arc, Circle, Point2D, Primitive, Program, Segment, \
    normalize_angle, validate_consistency
from modules.program.validation import MAX_STROKE_WIDTH, MIN_STROKE_WIDTH
from modules.renderer import RenderFailure, drawn_width, primitive_mask, render
from modules.skeleton import GeoSkeleton, SkeletonConfig
from modules.skeleton.fitting import fit_circle
from modules.vep import DiffRegion, DiffReport, RegionClass, local_widths
from modules.evolution.config import LoopConfig, RefinerMode
from modules.evolution.search import pattern_search
from modules.evolution.state import LoopState
from modules.evolution.synthesis import snap
from utils.exceptions import GeoError
from utils.logger import GeoLogger


@dataclass
class Refinement:
    """ Outcome of one correction step: the new program and what was done. """
    program: Program
    actions: List[str] = field(default_factory=list)

    @property
    def note(self) -> str:
        return '; '.join(self.actions)


def _valid(program: Program) -> bool:
    return not validate_consistency(program)


def missing_pixels(program: Program, obs_mask: np.ndarray, tau: int) -> int:
    """ Observation edge pixels the program's rendering leaves unmatched. """
    try:
        rec_mask = extract_edge_map(render(program)).mask
    except RenderFailure:
        return int(obs_mask.sum())
    window = np.ones((2 * tau + 1, 2 * tau + 1), dtype=bool)
    return int((obs_mask & ~binary_dilation(rec_mask, structure=window)).sum())


def _completion(region: DiffRegion, program: Program, skeleton: GeoSkeleton,
                cfg: LoopConfig) -> Optional[Primitive]:
    """ A segment along an elongated missing region, otherwise a circle or arc
    fitted to it. """
    anchors = list(skeleton.anchors) if skeleton is not None else []
    center, axis, elongation = region.principal_axis()
    if elongation >= cfg.line_elongation:
        along = (region.pixels - center) @ axis
        reach = cfg.inspection.tau + 1.0
        ends = [center + (along.min() - reach) * axis, center + (along.max() + reach) * axis]
        p1, p2 = [snap(Point2D(float(e[0]), float(e[1])), anchors, cfg.snap_radius)
                  for e in ends]
        if p1 == p2:
            return None
        return Primitive(program.fresh_id('S'), Segment(p1, p2), program.defaults)
    fit = fit_circle(region.pixels.astype(np.float64), SkeletonConfig(),
                     2.0 * max(program.width, program.height))
    if fit is None:
        return None
    center_pt = Point2D(float(fit.center[0]), float(fit.center[1]))
    if fit.coverage >= SkeletonConfig().full_circle_coverage:
        shape = Circle(center_pt, float(fit.radius))
    else:
        shape = Arc(center_pt, float(fit.radius), normalize_angle(fit.start_deg),
                    normalize_angle(fit.end_deg))
    return Primitive(program.fresh_id('C'), shape, program.defaults)


def _complete(report: DiffReport, program: Program, skeleton: GeoSkeleton,
              evaluator: ObjectiveEvaluator, cfg: LoopConfig, base_q: float):
    for region in report.of_class(RegionClass.Missing):
        prim = _completion(region, program, skeleton, cfg)
        if prim is None:
            continue
        candidate = program.appended(prim)
        if _valid(candidate) and evaluator.score(candidate) < base_q:
            return candidate, 'completion: added {} {}'.format(prim.kind.value, prim.id)
    return None


def stroke_coverage(region: DiffRegion, prim: Primitive, program: Program) -> float:
    """ Share of the primitive's painted pixels that lie inside the region. """
    mask = primitive_mask(prim, program.width, program.height)
    painted = int(mask.sum())
    if painted == 0:
        return 0.0
    return float(mask[region.pixels[:, 1], region.pixels[:, 0]].sum()) / painted


def _prune(report: DiffReport, program: Program, evaluator: ObjectiveEvaluator,
           cfg: LoopConfig, base_q: float):
    missing_before = None
    for region in report.of_class(RegionClass.Hallucination):
        prim = program.get(region.nearest_primitive_id) if region.nearest_primitive_id \
            else None
        if prim is None or stroke_coverage(region, prim, program) < cfg.prune_coverage:
            continue
        candidate = program.without(prim.id)
        if missing_before is None:
            missing_before = missing_pixels(program, evaluator.obs_edges.mask,
                                            cfg.inspection.tau)
        if missing_pixels(candidate, evaluator.obs_edges.mask,
                          cfg.inspection.tau) > missing_before:
            continue
        if evaluator.score(candidate) <= base_q:
            return candidate, 'pruning: removed {}'.format(prim.id)
    return None


def _attributed(report: DiffReport, classes) -> List[Tuple[str, DiffRegion]]:
    """ (primitive id, largest region) per attributed primitive, report order. """
    seen, found = set(), []
    for region in report.regions:
        if region.classification in classes and region.nearest_primitive_id and \
                region.nearest_primitive_id not in seen:
            seen.add(region.nearest_primitive_id)
            found.append((region.nearest_primitive_id, region))
    return found


def _fine_tune(targets, program: Program, evaluator: ObjectiveEvaluator, cfg: LoopConfig,
               actions: List[str]) -> Program:
    for prim_id, region in targets:
        if program.get(prim_id) is None:
            continue
        before = evaluator.score(program)
        program, q = pattern_search(evaluator, program, prim_id, region.centroid,
                                    cfg.step_init, cfg.step_min, cfg.probe_budget)
        if q < before:
            actions.append('fine-tuning: moved {}'.format(prim_id))
    return program


def observed_width(region: DiffRegion, obs_mask: np.ndarray, fallback: float,
                   margin: int = 3) -> float:
    """ Median stroke width of the observation around a region. """
    skeleton, widths = local_widths(obs_mask)
    x0, y0, x1, y1 = region.bbox
    height, width = obs_mask.shape
    window = (slice(max(y0 - margin, 0), min(y1 + margin + 1, height)),
              slice(max(x0 - margin, 0), min(x1 + margin + 1, width)))
    local = widths[window][skeleton[window]]
    value = float(np.median(local)) if len(local) else fallback
    return min(max(value, MIN_STROKE_WIDTH), MAX_STROKE_WIDTH)


def _restyle(report: DiffReport, program: Program, skeleton: GeoSkeleton,
             evaluator: ObjectiveEvaluator, actions: List[str]) -> Program:
    fallback = skeleton.stroke_width if skeleton is not None else program.defaults.stroke_width
    for prim_id, region in _attributed(report, (RegionClass.StyleMismatch,)):
        prim = program.get(prim_id)
        if prim is None:
            continue
        target = observed_width(region, evaluator.obs_edges.mask, fallback)
        if drawn_width(target) == drawn_width(prim.style.stroke_width):
            continue
        candidate = program.replaced(prim.with_style(replace(prim.style, stroke_width=target)))
        if _valid(candidate) and evaluator.score(candidate) <= evaluator.score(program):
            program = candidate
            actions.append('style: {} stroke_width {:g}'.format(prim_id, target))
    return program


def deterministic_refinement(state: LoopState, skeleton: GeoSkeleton, cfg: LoopConfig,
                             evaluator: ObjectiveEvaluator) -> Refinement:
    """ Rule-based correction in priority order: completion of a missing
    stroke, else pruning of a hallucinated primitive (at most one structural
    edit), then fine-tuning of drifted primitives and style correction. """
    program = state.program
    report = state.report
    actions = []
    if report is None or not report.regions:
        return Refinement(program, actions)
    base_q = evaluator.score(program)
    structural = _complete(report, program, skeleton, evaluator, cfg, base_q) or \
        _prune(report, program, evaluator, cfg, base_q)
    if structural is not None:
        program = structural[0]
        actions.append(structural[1])
    targets = _attributed(report, (RegionClass.Drift,))
    if not targets and structural is None:
        targets = _attributed(report, (RegionClass.Missing, RegionClass.Hallucination))
    program = _fine_tune(targets, program, evaluator, cfg, actions)
    program = _restyle(report, program, skeleton, evaluator, actions)
    return Refinement(program, actions)


def agent_refinement(state: LoopState, observation, agent,
                     logger: GeoLogger = None) -> Optional[Refinement]:
    """ The agent's edit of the current program, or None when the reply does
    not parse, does not validate or the transport failed. """
    try:
        proposal = agent.refine_program(state.program, state.report, observation)
    except GeoError as err:
        if logger is not None:
            logger.info('agent refinement rejected: {}'.format(err))
        state.notes.append('agent unavailable: {}'.format(err.message))
        return None
    if (proposal.width, proposal.height) != (state.program.width, state.program.height) or \
            not _valid(proposal):
        if logger is not None:
            logger.info('agent refinement rejected: invalid program')
        return None
    return Refinement(proposal, ['agent edit'])


def propose_refinement(state: LoopState, observation, skeleton: GeoSkeleton,
                       cfg: LoopConfig = LoopConfig(), evaluator: ObjectiveEvaluator = None,
                       agent=None, logger: GeoLogger = None) -> Refinement:
    """ One correction step in the configured refiner mode.

    Deterministic mode applies the rule-based actions. Agent mode uses the
    agent's program whenever it is valid. Hybrid mode evaluates both and
    keeps the one with the lower objective. Agent failures fall back to the
    rule-based step.
    """
    if evaluator is None:
        evaluator = ObjectiveEvaluator(observation, skeleton, cfg.objective)
    mode = cfg.refiner_mode if agent is not None else RefinerMode.Deterministic
    if mode is RefinerMode.Deterministic or state.report is None or not state.report.regions:
        return deterministic_refinement(state, skeleton, cfg, evaluator)
    proposal = agent_refinement(state, observation, agent, logger)
    if proposal is not None and mode is RefinerMode.Agent:
        return proposal
    fallback = deterministic_refinement(state, skeleton, cfg, evaluator)
    if proposal is None:
        fallback.actions.insert(0, 'agent fallback')
        return fallback
    if evaluator.score(proposal.program) < evaluator.score(fallback.program):
        return proposal
    return fallback


def refine_step(state: LoopState, observation, skeleton: GeoSkeleton,
                cfg: LoopConfig = LoopConfig(), evaluator: ObjectiveEvaluator = None,
                agent=None) -> Program:
    """ The next program C(t+1); unchanged when no action applies. """
    return propose_refinement(state, observation, skeleton, cfg, evaluator, agent).program


class Refiner(Module):
    """ Evaluation and correction stage of the loop.

    Records the current program's objective in the loop state, decides
    whether the loop stops (convergence, iteration limit or stall) and
    otherwise emits the corrected ``program``.
    """

    def __init__(self, cfg: LoopConfig = LoopConfig(), agent=None,
                 logger: GeoLogger = GeoLogger()):
        Module.__init__(self, logger=logger)
        self.cfg = cfg
        self.agent = agent
        self.evaluator = None
        self.state = None
        self._note = ''

    def start_reconstruction(self, observation=None, skeleton: GeoSkeleton = None, **kwargs):
        self.evaluator = ObjectiveEvaluator(observation, skeleton, self.cfg.objective)
        self.state = LoopState()
        self._note = ''
        return {'state': self.state}

    def _stop_reason(self, iteration: int) -> Optional[str]:
        if self.state.metrics.hd <= self.cfg.epsilon_hd and \
                self.state.metrics.edge_counts[0] > 0:
            return 'converged'
        if iteration >= self.cfg.max_iterations:
            return 'iteration limit'
        if self.state.stalled(self.cfg.stall_tolerance, self.cfg.stall_iterations):
            return 'stalled'
        return None

    def forward(self, system, program: Program = None, report: DiffReport = None,
                observation=None, skeleton: GeoSkeleton = None, **kwargs) -> dict:
        iteration = system.num_iterations if system is not None else self.state.iteration
        self.state.iteration = iteration
        breakdown = self.evaluator.breakdown(program)[0]
        metrics = report.metrics if report is not None else \
            self.evaluator.evaluate(program)[1]
        entry = self.state.record(program, breakdown, metrics, report, self._note)
        self.logger.iteration('t={} cd={:.3f} hd={:.3f} q={:.6f} {}'.format(
            entry.t, entry.cd, entry.hd, entry.q, entry.note).rstrip())
        reason = self._stop_reason(iteration)
        if reason is not None:
            self.logger.iteration('stop: {}'.format(reason))
            self.state.stop_reason = reason
            self.state.probes = self.evaluator.probes
            return {'stop': True, 'stop_reason': reason}
        refinement = propose_refinement(self.state, observation, skeleton, self.cfg,
                                        self.evaluator, self.agent, self.logger)
        self._note = refinement.note
        self.state.probes = self.evaluator.probes
        return {'program': refinement.program, 'stop': False}
