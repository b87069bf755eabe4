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

import pytest

from modules.agents import AnchorReview
from modules.anchoring import Anchor, AnchorKind, AnchorSource
from modules.anchoring import extract_edge_map
from modules.program import Circle, Point2D, Primitive, Program, Segment, Style
from modules.renderer import Raster, render
from modules.skeleton import CircleHypothesis, FittedPrimitives, GeoSkeleton, Relation, \
    RelationKind, SegmentHypothesis, SkeletonConfig, accept_proposed, build_skeleton, \
    discover_relations, fit_primitives, merge_relations, mine_relations, relation_residual, \
    residual_ratio, skeleton_geometry, stroke_width, verify_anchors
from utils.exceptions import AgentError


def seg(x0, y0, x1, y1):
    return Segment(Point2D(x0, y0), Point2D(x1, y1))


def hyp(prim_id, x0, y0, x1, y1):
    return SegmentHypothesis(prim_id, Point2D(x0, y0), Point2D(x1, y1), 10)


def test_angular_residuals():
    horizontal, vertical = seg(0, 0, 10, 0), seg(5, -5, 5, 5)
    assert relation_residual(RelationKind.Parallel, [horizontal, seg(0, 3, 7, 3)]) == 0.0
    assert relation_residual(RelationKind.Perpendicular, [horizontal, vertical]) == 0.0
    assert relation_residual(RelationKind.Parallel, [horizontal, vertical]) == 90.0


def test_metric_residuals():
    assert relation_residual(RelationKind.Midpoint, [Point2D(5, 1), seg(0, 0, 10, 0)]) == 1.0
    assert relation_residual(RelationKind.Incidence,
                             [Point2D(13, 0), Circle(Point2D(0, 0), 10)]) == 3.0
    assert relation_residual(RelationKind.Tangent,
                             [seg(-20, 10, 20, 10), Circle(Point2D(0, 0), 10)]) == 0.0
    assert relation_residual(RelationKind.EqualLength,
                             [seg(0, 0, 10, 0), seg(0, 0, 0, 8)]) == pytest.approx(0.2)
    assert relation_residual(RelationKind.Collinear,
                             [Point2D(0, 0), Point2D(5, 5), Point2D(10, 10)]) == \
        pytest.approx(0.0, abs=1e-9)


def test_residual_rejects_wrong_operand_types():
    assert relation_residual(RelationKind.Parallel, [Point2D(0, 0), seg(0, 0, 1, 1)]) is None
    assert relation_residual(RelationKind.Collinear, [Point2D(0, 0), Point2D(1, 1)]) is None


def test_residual_ratio_of_unresolved_operand():
    relation = Relation(RelationKind.Parallel, ('S1', 'S9'), 0.0, 2.0)
    assert residual_ratio(relation, {'S1': seg(0, 0, 1, 0)}) == 1.0


def test_mine_relations_on_a_right_angle():
    fitted = FittedPrimitives((hyp('S1', 0, 0, 100, 0), hyp('S2', 0, 0, 0, 100),
                               hyp('S3', 0, 50, 100, 50)))
    anchors = [Anchor(Point2D(50, 0), 1.0, AnchorKind.Junction, id='P1')]
    relations = mine_relations(fitted, anchors)
    keys = {r.key() for r in relations}
    assert (RelationKind.Perpendicular, ('S1', 'S2')) in keys
    assert (RelationKind.Parallel, ('S1', 'S3')) in keys
    assert (RelationKind.EqualLength, ('S1', 'S2')) in keys
    assert (RelationKind.Midpoint, ('P1', 'S1')) in keys
    assert all(r.residual <= r.tolerance for r in relations)


def test_accept_proposed_rechecks_geometry():
    skeleton = GeoSkeleton(segments=(hyp('S1', 0, 0, 100, 0), hyp('S2', 0, 0, 0, 100)))
    proposed = [Relation(RelationKind.Perpendicular, ('S1', 'S2'), 0.0, 0.0),
                Relation(RelationKind.Parallel, ('S1', 'S2'), 0.0, 0.0),
                Relation(RelationKind.Parallel, ('S1', 'S7'), 0.0, 0.0)]
    accepted = accept_proposed(proposed, skeleton_geometry(skeleton))
    assert [r.kind for r in accepted] == [RelationKind.Perpendicular]
    assert accepted[0].tolerance == SkeletonConfig().angle_tolerance


def test_merge_relations_drops_symmetric_duplicates():
    first = Relation(RelationKind.Parallel, ('S1', 'S2'), 0.5, 2.0)
    second = Relation(RelationKind.Parallel, ('S2', 'S1'), 0.1, 2.0)
    assert merge_relations([first], [second]) == [first]


def test_verify_drops_off_stroke_and_merges(triangle_image):
    raw = [Anchor(Point2D(100, 41), 0.8, AnchorKind.Corner),
           Anchor(Point2D(101, 42), 0.6, AnchorKind.Junction),
           Anchor(Point2D(100, 100), 0.9, AnchorKind.Corner),
           Anchor(Point2D(40, 160), 0.7, AnchorKind.Corner)]
    anchors = verify_anchors(raw, triangle_image)
    assert [a.id for a in anchors] == ['P1', 'P2']
    apex, corner = anchors
    assert apex.kind is AnchorKind.Junction
    assert apex.score == 0.8
    assert apex.pos == Point2D(100.5, 41.5)
    assert corner.pos == Point2D(40, 160)


def test_verify_merges_anchors_two_pixels_apart(triangle_image):
    raw = [Anchor(Point2D(40, 160), 0.7, AnchorKind.Corner),
           Anchor(Point2D(42, 160), 0.7, AnchorKind.Corner)]
    anchors = verify_anchors(raw, triangle_image)
    assert len(anchors) == 1
    assert anchors[0].pos == Point2D(41, 160)


class ScriptedReviewer(object):
    def __init__(self, review=None, error=None):
        self.review = review
        self.error = error

    def review_anchors(self, anchors, image):
        if self.error is not None:
            raise self.error
        return self.review


def test_verify_applies_agent_review(triangle_image):
    raw = [Anchor(Point2D(100, 40), 0.8, AnchorKind.Corner),
           Anchor(Point2D(40, 160), 0.7, AnchorKind.Corner)]
    review = AnchorReview(drop=frozenset({'P2'}), relabel={'P1': AnchorKind.Junction},
                          add=[Anchor(Point2D(160, 160), 1.0), Anchor(Point2D(100, 120), 1.0)])
    anchors = verify_anchors(raw, triangle_image, agent=ScriptedReviewer(review))
    assert [(a.id, a.kind, a.source) for a in anchors] == [
        ('P1', AnchorKind.Junction, AnchorSource.GradientOperator),
        ('P2', AnchorKind.Unknown, AnchorSource.AgentProposal)]
    assert anchors[1].pos == Point2D(160, 160)


def test_verify_survives_agent_failure(triangle_image):
    raw = [Anchor(Point2D(100, 40), 0.8, AnchorKind.Corner)]
    failing = ScriptedReviewer(error=AgentError('down', module='agents'))
    assert verify_anchors(raw, triangle_image, agent=failing) == verify_anchors(raw,
                                                                                 triangle_image)


def test_blank_image_gives_empty_skeleton():
    skeleton = build_skeleton(Raster.blank(50, 50), text='a blank page')
    assert skeleton.is_empty()
    assert skeleton.text == 'a blank page'


def test_triangle_skeleton(triangle_image):
    skeleton = build_skeleton(triangle_image)
    assert len(skeleton.segments) >= 3
    ends = [p for s in skeleton.segments for p in (s.p1, s.p2)]
    for x, y in ((40, 160), (160, 160), (100, 40)):
        assert any(a.pos.distance_to(Point2D(x, y)) <= 4.0 for a in skeleton.anchors)
        assert sum(1 for p in ends if p.distance_to(Point2D(x, y)) <= 5.0) >= 2
    assert skeleton.stroke_width == 1.0
    assert [s.id for s in skeleton.segments][:3] == ['S1', 'S2', 'S3']


def test_circle_skeleton(circle_program):
    skeleton = build_skeleton(render(circle_program))
    assert skeleton.circles
    circle = skeleton.circles[0]
    assert circle.center.distance_to(Point2D(100, 100)) <= 3.0
    assert abs(circle.radius - 60) <= 3.0


def test_stroke_width_estimates():
    assert stroke_width(extract_edge_map(render(Program(60, 60)))) == 2.0
    thick = Program(60, 60, (Primitive('s1', seg(10, 30, 50, 30), Style(stroke_width=5.0)),))
    assert stroke_width(extract_edge_map(render(thick))) == 5.0


def test_skeleton_json_round_trip():
    skeleton = GeoSkeleton(
        anchors=(Anchor(Point2D(1.5, 2.0), 0.5, AnchorKind.Corner, id='P1'),),
        segments=(hyp('S1', 0, 0, 10, 0),),
        circles=(CircleHypothesis('C1', Point2D(5, 5), 3.0, 12, 0.25, 0.0, 90.0),),
        relations=(Relation(RelationKind.Midpoint, ('P1', 'S1'), 0.5, 3.0),),
        text='triangle ABC', stroke_width=3.0)
    data = skeleton.to_dict()
    assert data['schema_version'] == 1
    assert GeoSkeleton.from_json(skeleton.to_json()) == skeleton


def test_unknown_schema_version():
    with pytest.raises(ValueError):
        GeoSkeleton.from_dict({'schema_version': 99})


def test_fit_single_stroke():
    line = Program(200, 200, (Primitive('s1', seg(20, 100, 180, 100)),))
    fitted = fit_primitives(extract_edge_map(render(line)), [])
    assert len(fitted.segments) == 1
    assert not fitted.circles
    ends = sorted([fitted.segments[0].p1, fitted.segments[0].p2], key=lambda p: p.x)
    assert ends[0].distance_to(Point2D(20, 100)) <= 2.0
    assert ends[1].distance_to(Point2D(180, 100)) <= 2.0
    assert fit_primitives(extract_edge_map(Raster.blank(50, 50)), []) == FittedPrimitives()


class RelationReader(object):
    def __init__(self, proposed=(), error=None):
        self.proposed = list(proposed)
        self.error = error
        self.texts = []

    def extract_relations(self, skeleton, text):
        self.texts.append(text)
        if self.error is not None:
            raise self.error
        return self.proposed


def test_discover_relations_with_text_reader():
    fitted = FittedPrimitives((hyp('S1', 0, 0, 100, 0), hyp('S2', 0, 0, 0, 100)))
    mined = mine_relations(fitted, [])
    reader = RelationReader([Relation(RelationKind.Perpendicular, ('S2', 'S1'), 0.0, 0.0),
                             Relation(RelationKind.Parallel, ('S1', 'S2'), 0.0, 0.0)])
    assert discover_relations(fitted, [], 'AB is perpendicular to AC', agent=reader) == mined
    assert reader.texts == ['AB is perpendicular to AC']
    assert discover_relations(fitted, [], None, agent=reader) == mined
    assert len(reader.texts) == 1
    failing = RelationReader(error=AgentError('offline', module='agents'))
    assert discover_relations(fitted, [], 'text', agent=failing) == mined
