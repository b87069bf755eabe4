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

import numpy as np

from modules.anchoring import Anchor, AnchorConfig, AnchorKind, AnchorSource, anchors_from_json, \
    anchors_to_json, cluster_points, deduplicate, detect_corners, detect_junctions, \
    extract_edge_map, extract_raw_anchors, sort_anchors
from modules.program import Point2D, Program, synthetic_corpus
from modules.renderer import Raster, render
from tests.conftest import segment

TRIANGLE_VERTICES = [(40, 160), (160, 160), (100, 40)]


def plus_image() -> Raster:
    return render(Program(100, 100, (segment('h', 20, 50, 80, 50),
                                     segment('v', 50, 20, 50, 80))))


def near(anchors, x, y, radius):
    return [a for a in anchors if a.pos.distance_to(Point2D(x, y)) <= radius]


def test_edge_map_marks_dark_pixels():
    pixels = np.full((1, 3, 3), 255, dtype=np.uint8)
    pixels[0, 0] = 100
    pixels[0, 1] = 230
    edges = extract_edge_map(Raster(pixels), 200)
    assert edges.mask.tolist() == [[True, False, False]]


def test_blank_image_has_no_anchors():
    assert extract_raw_anchors(Raster.blank(40, 40)) == []


def test_triangle_vertices_are_anchored(triangle_image):
    anchors = extract_raw_anchors(triangle_image)
    for x, y in TRIANGLE_VERTICES:
        assert near(anchors, x, y, 4.0), (x, y)
    assert anchors == sort_anchors(anchors)


def test_corners_found_at_vertices(triangle_image):
    corners = detect_corners(extract_edge_map(triangle_image))
    assert all(a.kind is AnchorKind.Corner for a in corners)
    assert all(0 < a.score <= 1.0 for a in corners)
    assert near(corners, 100, 40, 4.0)


def test_plus_has_junction_and_endpoints():
    anchors = detect_junctions(extract_edge_map(plus_image()))
    junctions = [a for a in anchors if a.kind is AnchorKind.Junction]
    endpoints = [a for a in anchors if a.kind is AnchorKind.Endpoint]
    assert near(junctions, 50, 50, 2.0)
    assert len(endpoints) == 4
    for x, y in ((20, 50), (80, 50), (50, 20), (50, 80)):
        assert near(endpoints, x, y, 2.0), (x, y)


def test_cluster_points_single_linkage():
    groups = cluster_points(np.array([[0, 0], [1, 0], [10, 10], [2, 1]]), 2.0)
    assert [sorted(g.tolist()) for g in groups] == [[0, 1, 3], [2]]
    assert cluster_points(np.zeros((0, 2)), 2.0) == []


def test_deduplicate_prefers_junctions():
    corner = Anchor(Point2D(10, 10), 0.9, AnchorKind.Corner)
    junction = Anchor(Point2D(11, 11), 1.0, AnchorKind.Junction)
    far = Anchor(Point2D(40, 40), 0.2, AnchorKind.Endpoint)
    kept = deduplicate([corner, junction, far], 4.0)
    assert kept == [junction, far]


def test_anchor_json_round_trip():
    anchors = [Anchor(Point2D(12.5, 3.25), 0.75, AnchorKind.Corner, AnchorSource.AgentProposal,
                      'P1')]
    entries = anchors_to_json(anchors)
    assert entries == [{'x': 12.5, 'y': 3.25, 'score': 0.75, 'kind': 'corner',
                        'source': 'agent_proposal', 'id': 'P1'}]
    assert anchors_from_json(entries) == anchors


def test_l_shape_has_one_corner_at_its_vertex():
    image = render(Program(500, 500, (segment('v', 200, 100, 200, 300),
                                      segment('h', 200, 300, 400, 300))))
    corners = detect_corners(extract_edge_map(image))
    assert len(near(corners, 200, 300, 2.0)) == 1


def test_straight_segment_has_no_interior_corner():
    image = render(Program(200, 60, (segment('s1', 50, 30, 150, 30),)))
    corners = detect_corners(extract_edge_map(image))
    assert [a for a in corners if 55 < a.pos.x < 145] == []


def test_single_segment_gives_two_endpoints():
    image = render(Program(120, 120, (segment('s1', 20, 30, 100, 90),)))
    anchors = detect_junctions(extract_edge_map(image))
    assert [a.kind for a in anchors] == [AnchorKind.Endpoint, AnchorKind.Endpoint]
    assert near(anchors, 20, 30, 2.0) and near(anchors, 100, 90, 2.0)


def test_vertices_survive_salt_noise(triangle_image):
    rng = np.random.default_rng(7)
    pixels = np.array(triangle_image.pixels)
    ink = triangle_image.luma() < 128
    placed = 0
    while placed < 50:
        x, y = (int(v) for v in rng.integers(0, 200, 2))
        if ink[max(y - 3, 0):y + 4, max(x - 3, 0):x + 4].any():
            continue
        if min(np.hypot(x - vx, y - vy) for vx, vy in TRIANGLE_VERTICES) < 15:
            continue
        pixels[y, x] = 0
        placed += 1
    anchors = extract_raw_anchors(Raster(pixels))
    for x, y in TRIANGLE_VERTICES:
        assert near(anchors, x, y, 3.0), (x, y)


def test_junction_anchors_keep_their_spacing(triangle_image):
    radius = AnchorConfig().junction_radius
    images = [triangle_image, plus_image()] + [render(p) for _, p in synthetic_corpus(4, seed=5)]
    for image in images:
        anchors = detect_junctions(extract_edge_map(image))
        for idx, first in enumerate(anchors):
            for second in anchors[idx + 1:]:
                assert first.pos.distance_to(second.pos) > radius


def test_deduplicate_spacing_is_strict():
    chain = [Anchor(Point2D(10 + 3 * idx, 10), 1.0, AnchorKind.Junction) for idx in range(5)]
    kept = deduplicate(chain, 5.0)
    assert [a.pos.x for a in kept] == [10, 16, 22]
