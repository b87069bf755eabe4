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
import pytest

from modules.anchoring import EdgeMap, extract_edge_map
from modules.metrics import DimensionMismatch, EmptyEdgeSet, MetricBundle, ObjectiveConfig, \
    ObjectiveEvaluator, brute_force_distances, chamfer_distance, compare_edges, diagonal, \
    directed_distances, evaluate_pairs, hausdorff_distance, measure, objective, ssim
from modules.program import Program
from modules.renderer import Raster, render
from modules.skeleton import GeoSkeleton, Relation, RelationKind
from tests.conftest import segment


def edges_of(points, size=20):
    return EdgeMap.from_points(points, size, size)


def test_single_points():
    first, second = edges_of([(0, 0)]), edges_of([(3, 4)])
    assert chamfer_distance(first, second) == 5.0
    assert hausdorff_distance(first, second) == 5.0


def test_chamfer_is_mean_of_both_directions():
    cd, hd = compare_edges(edges_of([(0, 0), (10, 0)]), edges_of([(0, 0)]))
    assert cd == 2.5
    assert hd == 10.0


def test_distance_transform_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(10):
        first = edges_of(rng.integers(0, 96, size=(200, 2)), 96)
        second = edges_of(rng.integers(0, 96, size=(150, 2)), 96)
        fast = directed_distances(first, second)
        slow = brute_force_distances(first.points(), second.points())
        assert np.allclose(fast[0], slow[0], atol=1e-9)
        assert np.allclose(fast[1], slow[1], atol=1e-9)


def test_empty_and_mismatched_edge_sets():
    with pytest.raises(EmptyEdgeSet):
        compare_edges(edges_of([]), edges_of([(1, 1)]))
    with pytest.raises(DimensionMismatch):
        compare_edges(edges_of([(1, 1)], 20), edges_of([(1, 1)], 30))


def test_identical_images(triangle_image):
    bundle = measure(triangle_image, triangle_image)
    assert (bundle.cd, bundle.hd) == (0.0, 0.0)
    assert bundle.ssim == pytest.approx(1.0)
    assert bundle.edge_counts[0] == bundle.edge_counts[1] > 0


def test_blank_reconstruction_scores_the_diagonal(triangle_image):
    bundle = measure(Raster.blank(200, 200), triangle_image)
    assert bundle.cd == bundle.hd == diagonal(200, 200)
    assert bundle.edge_counts[0] == 0


def test_measure_rejects_size_mismatch(triangle_image):
    with pytest.raises(DimensionMismatch):
        measure(Raster.blank(100, 200), triangle_image)
    with pytest.raises(DimensionMismatch):
        ssim(Raster.blank(100, 200), triangle_image)


def test_shifted_line_distance():
    obs = render(Program(100, 100, (segment('s1', 10, 50, 90, 50),)))
    rec = render(Program(100, 100, (segment('s1', 10, 53, 90, 53),)))
    bundle = measure(rec, obs)
    assert bundle.cd == pytest.approx(3.0)
    assert bundle.hd == pytest.approx(3.0)
    assert bundle.ssim < 1.0


def test_evaluate_pairs_averages(triangle_image):
    bundles, means = evaluate_pairs([(triangle_image, triangle_image),
                                     (Raster.blank(200, 200), triangle_image)])
    assert len(bundles) == 2
    assert means['cd'] == pytest.approx(diagonal(200, 200) / 2)
    assert evaluate_pairs([]) == ([], {})


def test_bundle_dict_round_trip():
    bundle = MetricBundle(1.25, 4.0, 0.5, (10, 12))
    assert MetricBundle.from_dict(bundle.to_dict()) == bundle


def test_objective_of_exact_program(triangle_program, triangle_image):
    result = objective(triangle_program, triangle_image)
    assert (result.d_geo, result.d_consist, result.d_sem, result.q) == (0.0, 0.0, 0.0, 0.0)


def test_objective_counts_violations(triangle_program, triangle_image):
    broken = triangle_program.with_primitives(list(triangle_program.primitives) +
                                              [segment('s4', 5, 5, 5, 5)])
    result = objective(broken, triangle_image)
    assert result.d_consist == 1.0
    assert result.d_geo == 0.0
    assert result.q == 1.0


def test_objective_unresolved_relation(triangle_program, triangle_image):
    skeleton = GeoSkeleton(relations=(Relation(RelationKind.Parallel, ('S1', 'S2'), 0.0, 2.0),))
    result = objective(triangle_program, triangle_image, skeleton)
    assert result.d_sem == 1.0
    assert result.q == pytest.approx(ObjectiveConfig().gamma)


def test_blank_program_scores_diagonal(triangle_image):
    result = objective(Program(200, 200), triangle_image)
    assert result.d_geo == pytest.approx(diagonal(200, 200) / ObjectiveConfig().cd_scale)


def test_evaluator_counts_probes(triangle_program, triangle_image):
    evaluator = ObjectiveEvaluator(triangle_image)
    evaluator.score(triangle_program)
    result, bundle, rec = evaluator.evaluate(triangle_program)
    assert evaluator.probes == 2
    assert bundle.cd == 0.0
    assert rec == triangle_image


def test_objective_config_validation():
    with pytest.raises(ValueError):
        ObjectiveConfig(alpha=-1.0)
    with pytest.raises(ValueError):
        ObjectiveConfig(alpha=0.0, beta=0.0, gamma=0.0)
    with pytest.raises(ValueError):
        ObjectiveConfig(cd_scale=0.0)


def test_distances_are_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(20):
        first = edges_of(rng.integers(0, 40, size=(int(rng.integers(1, 30)), 2)), 40)
        second = edges_of(rng.integers(0, 40, size=(int(rng.integers(1, 30)), 2)), 40)
        assert hausdorff_distance(first, second) == hausdorff_distance(second, first)
        assert chamfer_distance(first, second) == pytest.approx(chamfer_distance(second, first))
        assert chamfer_distance(first, second) <= hausdorff_distance(first, second)


def naive_ssim(first: Raster, second: Raster, window=8, stride=4):
    plane_a, plane_b = first.luma(), second.luma()
    c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2
    height, width = plane_a.shape
    values = []
    for top in range(0, height - window + 1, stride):
        for left in range(0, width - window + 1, stride):
            cells = [(plane_a[y, x], plane_b[y, x]) for y in range(top, top + window)
                     for x in range(left, left + window)]
            n = float(len(cells))
            mean_a = sum(a for a, _ in cells) / n
            mean_b = sum(b for _, b in cells) / n
            var_a = sum((a - mean_a) ** 2 for a, _ in cells) / n
            var_b = sum((b - mean_b) ** 2 for _, b in cells) / n
            cov = sum((a - mean_a) * (b - mean_b) for a, b in cells) / n
            values.append((2 * mean_a * mean_b + c1) * (2 * cov + c2) /
                          ((mean_a ** 2 + mean_b ** 2 + c1) * (var_a + var_b + c2)))
    return sum(values) / len(values)


def test_ssim_of_white_against_checkerboard():
    yy, xx = np.mgrid[0:32, 0:32]
    board = np.where((xx + yy) % 2 == 0, 0, 255).astype(np.uint8)
    checkerboard = Raster(np.repeat(board[:, :, None], 3, axis=2))
    white = Raster.blank(32, 32)
    value = ssim(white, checkerboard)
    assert value == pytest.approx(naive_ssim(white, checkerboard), abs=1e-6)
    assert value < 0.1
    assert ssim(checkerboard, checkerboard) == pytest.approx(1.0)


def square(x0, y0, side):
    corners = [(x0, y0), (x0 + side, y0), (x0 + side, y0 + side), (x0, y0 + side)]
    return tuple(segment('s{}'.format(idx + 1), *corners[idx], *corners[(idx + 1) % 4])
                 for idx in range(4))


def test_objective_of_shifted_square():
    observation = render(Program(200, 200, square(55, 50, 100)))
    candidate = Program(200, 200, square(50, 50, 100))
    obs_points = extract_edge_map(observation).points()
    rec_points = extract_edge_map(render(candidate)).points()
    to_obs, to_rec = brute_force_distances(rec_points, obs_points)
    cd = 0.5 * (to_obs.mean() + to_rec.mean())
    hd = max(to_obs.max(), to_rec.max())
    assert hd == pytest.approx(5.0)
    cfg = ObjectiveConfig()
    result = objective(candidate, observation, cfg=cfg)
    assert result.d_consist == 0.0
    assert result.q == pytest.approx(cfg.alpha * (cd + 0.1 * hd) / cfg.cd_scale, abs=1e-9)


def test_objective_is_linear_in_its_weights(triangle_program, triangle_image):
    shifted = triangle_program.with_primitives(
        [segment('s1', 40, 164, 160, 164)] + list(triangle_program.primitives[1:]) +
        [segment('s4', 5, 5, 5, 5)])
    skeleton = GeoSkeleton(relations=(Relation(RelationKind.Parallel, ('S1', 'S2'), 0.0, 2.0),))
    base = ObjectiveConfig(alpha=1.0, beta=0.5, gamma=0.25)
    doubled = ObjectiveConfig(alpha=2.0, beta=1.0, gamma=0.5)
    single = objective(shifted, triangle_image, skeleton, base)
    assert min(single.d_geo, single.d_consist, single.d_sem) > 0
    assert objective(shifted, triangle_image, skeleton, doubled).q == \
        pytest.approx(2.0 * single.q)
