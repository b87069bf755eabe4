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

""" Tolerance-based relation mining over fitted primitives and anchors. """

from itertools import combinations
from typing import Iterable, List

from modules.anchoring import Anchor
from modules.program import Segment
from modules.skeleton.residuals import Geometry, point_line_distance, point_segment_distance, \
    relation_residual
from modules.skeleton.types import FittedPrimitives, Relation, RelationKind, SkeletonConfig


def _emit(kind: RelationKind, operands: tuple, geometry: List[Geometry], cfg: SkeletonConfig,
          out: List[Relation]):
    residual = relation_residual(kind, geometry)
    tolerance = cfg.tolerance(kind)
    if residual is not None and residual <= tolerance:
        out.append(Relation(kind, operands, residual, tolerance))


def _collinear_sets(anchors: List[Anchor], cfg: SkeletonConfig) -> List[tuple]:
    """ Maximal sets of at least three anchors on a common line. """
    found = set()
    for first, second in combinations(anchors, 2):
        if first.pos.distance_to(second.pos) <= cfg.distance_tolerance:
            continue
        line = Segment(first.pos, second.pos)
        members = tuple(sorted(a.id for a in anchors
                               if point_line_distance(a.pos, line) <= cfg.collinear_tolerance))
        if len(members) >= 3:
            found.add(members)
    return [members for members in sorted(found)
            if not any(set(members) < set(other) for other in found)]


def mine_relations(fitted: FittedPrimitives, anchors: List[Anchor],
                   cfg: SkeletonConfig = SkeletonConfig()) -> List[Relation]:
    """ Every relation whose residual is within its tolerance, deterministic order. """
    relations = []
    segments = list(fitted.segments)
    circles = list(fitted.circles)
    for first, second in combinations(segments, 2):
        operands = (first.id, second.id)
        shapes = [first.shape(), second.shape()]
        for kind in (RelationKind.Parallel, RelationKind.Perpendicular, RelationKind.EqualLength):
            _emit(kind, operands, shapes, cfg, relations)
    for anchor in anchors:
        for seg in segments:
            shape = seg.shape()
            _emit(RelationKind.Midpoint, (anchor.id, seg.id), [anchor.pos, shape], cfg, relations)
            near_end = min(anchor.pos.distance_to(shape.p1), anchor.pos.distance_to(shape.p2))
            if near_end > cfg.distance_tolerance and \
                    point_segment_distance(anchor.pos, shape) <= cfg.distance_tolerance:
                _emit(RelationKind.Incidence, (anchor.id, seg.id), [anchor.pos, shape], cfg,
                      relations)
        for circle in circles:
            _emit(RelationKind.Incidence, (anchor.id, circle.id), [anchor.pos, circle.shape()],
                  cfg, relations)
    for seg in segments:
        for circle in circles:
            _emit(RelationKind.Tangent, (seg.id, circle.id), [seg.shape(), circle.shape()], cfg,
                  relations)
    positions = {anchor.id: anchor.pos for anchor in anchors}
    for members in _collinear_sets(anchors, cfg):
        _emit(RelationKind.Collinear, members, [positions[m] for m in members], cfg, relations)
    return relations


def accept_proposed(proposed: Iterable[Relation], lookup: dict,
                    cfg: SkeletonConfig = SkeletonConfig()) -> List[Relation]:
    """ Keeps externally proposed relations whose operands exist and whose
    recomputed residual is within tolerance. """
    accepted = []
    for relation in proposed:
        if not relation.arity_ok() or any(op not in lookup for op in relation.operands):
            continue
        _emit(relation.kind, tuple(relation.operands), [lookup[op] for op in relation.operands],
              cfg, accepted)
    return accepted


def merge_relations(*groups: Iterable[Relation]) -> List[Relation]:
    """ Concatenates relation lists, dropping later duplicates. """
    seen = set()
    merged = []
    for group in groups:
        for relation in group:
            if relation.key() not in seen:
                seen.add(relation.key())
                merged.append(relation)
    return merged
