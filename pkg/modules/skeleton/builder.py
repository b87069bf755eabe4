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

""" Phase-I assembly: anchors are verified against the image, strokes fitted
and relations mined into a GeoSkeleton. An optional agent (anything offering
``review_anchors`` and ``extract_relations``) may refine both steps; its
failures never stop the deterministic path. """

from dataclasses import replace
from typing import List, Optional

import numpy as np
from scipy.ndimage import distance_transform_edt

from modules.anchoring import Anchor, AnchorConfig, AnchorKind, AnchorSource, EdgeMap, \
    cluster_points, extract_edge_map, raw_anchors_from_edges, sort_anchors, thin
from modules.anchoring.anchors import KIND_PRIORITY
from modules.module import Module
from modules.program import Point2D
from modules.renderer import Raster
from modules.skeleton.fitting import fit_primitives, stroke_width
from modules.skeleton.relations import accept_proposed, merge_relations, mine_relations
from modules.skeleton.residuals import skeleton_geometry
from modules.skeleton.types import FittedPrimitives, GeoSkeleton, Relation, SkeletonConfig
from utils.exceptions import AgentError
from utils.logger import GeoLogger


def _on_stroke(anchor: Anchor, distance: np.ndarray, radius: float) -> bool:
    height, width = distance.shape
    x = min(max(int(round(anchor.pos.x)), 0), width - 1)
    y = min(max(int(round(anchor.pos.y)), 0), height - 1)
    return bool(distance[y, x] <= radius)


def _merge_cluster(members: List[Anchor]) -> Anchor:
    x = sum(a.pos.x for a in members) / len(members)
    y = sum(a.pos.y for a in members) / len(members)
    kind = max((a.kind for a in members), key=lambda k: KIND_PRIORITY[k])
    source = AnchorSource.AgentProposal \
        if all(a.source is AnchorSource.AgentProposal for a in members) \
        else AnchorSource.GradientOperator
    return Anchor(Point2D(x, y), max(a.score for a in members), kind, source)


def _with_ids(anchors: List[Anchor]) -> List[Anchor]:
    return [replace(anchor, id='P{}'.format(idx + 1))
            for idx, anchor in enumerate(sort_anchors(anchors))]


def _filter_and_merge(raw: List[Anchor], distance: np.ndarray,
                      cfg: SkeletonConfig) -> List[Anchor]:
    kept = [anchor for anchor in sort_anchors(raw)
            if _on_stroke(anchor, distance, cfg.verify_radius)]
    coords = np.array([[a.pos.x, a.pos.y] for a in kept], dtype=np.float64).reshape(-1, 2)
    return [_merge_cluster([kept[idx] for idx in members])
            for members in cluster_points(coords, cfg.merge_radius)]


def verify_anchors(raw: List[Anchor], image: Raster, cfg: SkeletonConfig = SkeletonConfig(),
                   edge_threshold: int = 200, agent=None,
                   logger: GeoLogger = None) -> List[Anchor]:
    """ Keeps the anchors that lie on a stroke and merges near-duplicates into
    their centroid.

    Args:
        raw (List[Anchor]): candidates from the anchoring operators
        image (Raster): the observation
        cfg (SkeletonConfig): verification radius and merge radius
        edge_threshold (int): ink threshold of the on-stroke test
        agent: optional reviewer that may drop, relabel or add anchors; added
               anchors must pass the on-stroke test as well

    Returns:
        List[Anchor]: verified anchors with ids ``P1..`` in (y, x) order
    """
    edges = extract_edge_map(image, edge_threshold)
    if edges.is_empty():
        return []
    distance = distance_transform_edt(~edges.mask)
    anchors = _with_ids(_filter_and_merge(raw, distance, cfg))
    if agent is None or not anchors:
        return anchors
    try:
        review = agent.review_anchors(anchors, image)
    except AgentError as err:
        if logger is not None:
            logger.info('anchor review skipped: {}'.format(err))
        return anchors
    reviewed = [replace(a, kind=review.relabel.get(a.id, a.kind))
                for a in anchors if a.id not in review.drop]
    for proposal in review.add:
        proposal = replace(proposal, source=AnchorSource.AgentProposal, id=None)
        if _on_stroke(proposal, distance, cfg.verify_radius) and \
                all(proposal.pos.distance_to(a.pos) > cfg.merge_radius for a in reviewed):
            reviewed.append(proposal)
    return _with_ids(reviewed)


def discover_relations(fitted: FittedPrimitives, anchors: List[Anchor], text: str = None,
                       cfg: SkeletonConfig = SkeletonConfig(), agent=None,
                       logger: GeoLogger = None) -> List[Relation]:
    """ Relations among the fitted primitives and anchors, optionally merged
    with relations an agent reads from the accompanying text. Agent relations
    are kept only if their recomputed residual is within tolerance. """
    relations = mine_relations(fitted, anchors, cfg)
    if not text or agent is None:
        return relations
    partial = GeoSkeleton(anchors=tuple(anchors), segments=fitted.segments,
                          circles=fitted.circles, relations=tuple(relations), text=text)
    try:
        proposed = agent.extract_relations(partial, text)
    except AgentError as err:
        if logger is not None:
            logger.info('relation extraction skipped: {}'.format(err))
        return relations
    return merge_relations(relations, accept_proposed(proposed, skeleton_geometry(partial), cfg))


def build_skeleton(image: Raster, text: str = None, cfg: SkeletonConfig = SkeletonConfig(),
                   anchor_cfg: AnchorConfig = AnchorConfig(), agent=None,
                   logger: GeoLogger = None) -> GeoSkeleton:
    """ Runs anchoring, verification, fitting and relation mining on one image. """
    edges = extract_edge_map(image, anchor_cfg.edge_threshold)
    if edges.is_empty():
        return GeoSkeleton(text=text)
    skeleton_mask = thin(edges.mask)
    raw = raw_anchors_from_edges(edges, anchor_cfg)
    anchors = verify_anchors(raw, image, cfg, anchor_cfg.edge_threshold, agent, logger)
    fitted = fit_primitives(edges, anchors, cfg, skeleton_mask)
    relations = discover_relations(fitted, anchors, text, cfg, agent, logger)
    return GeoSkeleton(anchors=tuple(anchors), segments=fitted.segments, circles=fitted.circles,
                       relations=tuple(relations), text=text,
                       stroke_width=stroke_width(edges, skeleton_mask))


class SkeletonBuilder(Module):
    """ Phase-I stage: provides ``skeleton`` for the reconstruction unless one
    was handed in. """

    def __init__(self, cfg: SkeletonConfig = SkeletonConfig(),
                 anchor_cfg: AnchorConfig = AnchorConfig(), agent=None,
                 logger: GeoLogger = GeoLogger()):
        Module.__init__(self, logger=logger)
        self.cfg = cfg
        self.anchor_cfg = anchor_cfg
        self.agent = agent

    def start_reconstruction(self, observation: Raster = None, skeleton: GeoSkeleton = None,
                             text: str = None, **kwargs):
        if skeleton is not None or observation is None:
            return {}
        skeleton = build_skeleton(observation, text, self.cfg, self.anchor_cfg, self.agent,
                                  self.logger)
        self.logger.info('skeleton: {} anchors, {} segments, {} circles, {} relations'.format(
            len(skeleton.anchors), len(skeleton.segments), len(skeleton.circles),
            len(skeleton.relations)))
        return {'skeleton': skeleton}

    def forward(self, system, **kwargs) -> dict:
        return {}
