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

""" The global objective of a candidate program: geometric distance to the
observation, structural violations and relation residuals, weighted. """

from dataclasses import dataclass
from typing import Tuple

from modules.anchoring import extract_edge_map
from modules.metrics.bundle import MetricBundle, diagonal, edge_distances, measure
from modules.metrics.distances import DistanceField
from modules.program import Program, validate_consistency
from modules.renderer import Raster, RenderFailure, render
from modules.skeleton import GeoSkeleton, program_geometry, residual_ratio

HD_WEIGHT = 0.1


@dataclass(frozen=True)
class ObjectiveConfig:
    """ Weights of the geometric, consistency and semantic terms; ``cd_scale``
    normalizes pixel distances. """
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 0.01
    cd_scale: float = 100.0

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0 or \
                self.alpha + self.beta + self.gamma <= 0:
            raise ValueError('objective weights must be nonnegative with a positive sum')
        if self.cd_scale <= 0:
            raise ValueError('cd_scale must be positive')


@dataclass(frozen=True)
class ObjectiveBreakdown:
    d_geo: float
    d_consist: float
    d_sem: float
    q: float

    def to_dict(self) -> dict:
        return {'d_geo': self.d_geo, 'd_consist': self.d_consist, 'd_sem': self.d_sem,
                'q': self.q}


def combine(d_geo: float, d_consist: float, d_sem: float,
            cfg: ObjectiveConfig = ObjectiveConfig()) -> ObjectiveBreakdown:
    q = cfg.alpha * d_geo + cfg.beta * d_consist + cfg.gamma * d_sem
    return ObjectiveBreakdown(d_geo, d_consist, d_sem, q)


def geometric_term(cd: float, hd: float, cfg: ObjectiveConfig = ObjectiveConfig()) -> float:
    return (cd + HD_WEIGHT * hd) / cfg.cd_scale


def semantic_term(program: Program, skeleton: GeoSkeleton) -> float:
    """ Mean residual ratio of the skeleton relations on the program's geometry. """
    if skeleton is None or not skeleton.relations:
        return 0.0
    lookup = program_geometry(program, skeleton)
    return sum(residual_ratio(rel, lookup) for rel in skeleton.relations) / \
        len(skeleton.relations)


def drawable(program: Program) -> Tuple[Program, int]:
    """ The program without its violating primitives, and the number of violations. """
    violations = validate_consistency(program)
    if not violations:
        return program, 0
    bad = {v.primitive_id for v in violations}
    return program.with_primitives(p for p in program.primitives if p.id not in bad), \
        len(violations)


class ObjectiveEvaluator(object):
    """ Scores candidate programs against one observation.

    The observation's edge map and distance field are computed once and shared
    by every probe; ``probes`` counts the objective evaluations done so far.
    """

    def __init__(self, observation: Raster, skeleton: GeoSkeleton = None,
                 cfg: ObjectiveConfig = ObjectiveConfig()):
        self.observation = observation
        self.skeleton = skeleton
        self.cfg = cfg
        self.obs_edges = extract_edge_map(observation)
        self.obs_field = DistanceField(self.obs_edges)
        self.probes = 0

    def breakdown(self, program: Program) -> Tuple[ObjectiveBreakdown, Raster, float, float]:
        """ Objective breakdown, rendering, cd and hd of a program.

        Raises:
            RenderFailure: the valid part of the program still cannot be drawn
        """
        self.probes += 1
        part, violations = drawable(program)
        rec = render(part)
        rec_edges = extract_edge_map(rec)
        cd, hd = edge_distances(rec_edges, self.obs_edges, self.obs_field)
        if rec_edges.is_empty() or self.obs_edges.is_empty():
            d_geo = diagonal(rec.width, rec.height) / self.cfg.cd_scale
        else:
            d_geo = geometric_term(cd, hd, self.cfg)
        result = combine(d_geo, float(violations),
                         semantic_term(program, self.skeleton), self.cfg)
        return result, rec, cd, hd

    def score(self, program: Program) -> float:
        """ q of a program; an undrawable program scores infinity. """
        try:
            return self.breakdown(program)[0].q
        except RenderFailure:
            return float('inf')

    def evaluate(self, program: Program) -> Tuple[ObjectiveBreakdown, MetricBundle, Raster]:
        """ Full evaluation including SSIM, used once per loop iteration. """
        result, rec, _, _ = self.breakdown(program)
        return result, measure(rec, self.observation, self.obs_edges, self.obs_field), rec


def objective(program: Program, observation: Raster, skeleton: GeoSkeleton = None,
              cfg: ObjectiveConfig = ObjectiveConfig()) -> ObjectiveBreakdown:
    """ q = alpha * d_geo + beta * d_consist + gamma * d_sem for one program. """
    return ObjectiveEvaluator(observation, skeleton, cfg).breakdown(program)[0]
