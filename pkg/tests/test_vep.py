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

import json

import pytest

from modules.metrics import DimensionMismatch
from modules.program import Primitive, Program, Style
from modules.renderer import Raster, render
from modules.vep import DiffRegion, Inspector, InspectionConfig, MATCHED_COLOR, REGION_COLORS, \
    RegionClass, attribute_regions, project_errors
from tests.conftest import segment, triangle


def without_base(program: Program) -> Program:
    return program.with_primitives(p for p in program.primitives if p.id != 's1')


def test_identity_has_no_regions(triangle_image):
    report = project_errors(triangle_image, triangle_image, iteration=3)
    assert report.is_clean()
    assert report.iteration == 3
    assert report.metrics.cd == 0.0
    assert tuple(report.diff_image.pixels[160, 100]) == MATCHED_COLOR
    assert tuple(report.diff_image.pixels[5, 5]) == (255, 255, 255)


def test_deleted_primitive_is_missing(triangle_program, triangle_image):
    report = project_errors(render(without_base(triangle_program)), triangle_image)
    assert [r.classification for r in report.regions] == [RegionClass.Missing]
    region = report.regions[0]
    assert region.bbox[1] == region.bbox[3] == 160
    assert region.centroid.y == 160.0
    assert region.local_cd > 2.0
    assert tuple(report.diff_image.pixels[160, 100]) == REGION_COLORS[RegionClass.Missing]


def test_added_primitive_is_hallucination(triangle_program, triangle_image):
    extra = triangle_program.with_primitives(list(triangle_program.primitives) +
                                             [segment('s4', 20, 20, 20, 100)])
    report = project_errors(render(extra), triangle_image)
    assert [r.classification for r in report.regions] == [RegionClass.Hallucination]
    assert report.regions[0].pixel_count == 81
    attributed = attribute_regions(report, extra)
    assert attributed.regions[0].nearest_primitive_id == 's4'


def test_translated_primitive_is_drift(triangle_program, triangle_image):
    moved = triangle_program.with_primitives(
        [segment('s1', 40, 152, 160, 152)] + list(triangle_program.primitives[1:]))
    report = attribute_regions(project_errors(render(moved), triangle_image), moved)
    largest = report.regions[0]
    assert largest.classification is RegionClass.Drift
    assert largest.nearest_primitive_id == 's1'
    assert 150 <= largest.centroid.y <= 162
    assert not report.of_class(RegionClass.Missing) or \
        max(r.pixel_count for r in report.of_class(RegionClass.Missing)) < 10


def test_thicker_stroke_is_style_mismatch(triangle_program, triangle_image):
    base = triangle_program.primitives[0]
    thick = triangle_program.with_primitives(
        [Primitive(base.id, base.shape, Style(stroke_width=5.0))] +
        list(triangle_program.primitives[1:]))
    report = project_errors(render(thick), triangle_image)
    styles = report.of_class(RegionClass.StyleMismatch)
    assert styles
    assert not report.of_class(RegionClass.Missing)
    assert all(155 <= r.centroid.y <= 165 for r in styles)
    attributed = attribute_regions(report, thick)
    assert attributed.of_class(RegionClass.StyleMismatch)[0].nearest_primitive_id == 's1'


def test_regions_are_sorted_by_size(triangle_image):
    report = project_errors(Raster.blank(200, 200), triangle_image)
    counts = [r.pixel_count for r in report.regions]
    assert counts == sorted(counts, reverse=True)
    assert all(r.classification is RegionClass.Missing for r in report.regions)


def test_attribution_radius_limits_links(triangle_program, triangle_image):
    report = project_errors(render(without_base(triangle_program)), triangle_image)
    tight = attribute_regions(report, without_base(triangle_program),
                              InspectionConfig(attribution_radius=1.0))
    assert tight.regions[0].nearest_primitive_id is None


def test_size_mismatch(triangle_image):
    with pytest.raises(DimensionMismatch):
        project_errors(Raster.blank(100, 100), triangle_image)


def test_report_json(triangle_program, triangle_image):
    report = project_errors(render(without_base(triangle_program)), triangle_image, iteration=2)
    data = json.loads(report.to_json())
    assert data['iteration'] == 2
    assert data['regions'][0]['classification'] == 'missing'
    assert set(data['regions'][0]) == {'classification', 'bbox', 'centroid', 'pixel_count',
                                       'local_cd', 'nearest_primitive_id'}


def test_principal_axis_of_a_line():
    import numpy as np
    region = DiffRegion.from_pixels(RegionClass.Missing,
                                    np.array([[x, 10] for x in range(20)]), 1.0)
    _, direction, elongation = region.principal_axis()
    assert abs(direction[0]) == pytest.approx(1.0)
    assert elongation == float('inf')


def test_inspector_stage(quiet_logger):
    program = triangle()
    image = render(program)
    result = Inspector(logger=quiet_logger).forward(None, rendered=image, observation=image,
                                                    program=program)
    assert result['report'].is_clean()
    assert result['metrics'].cd == 0.0
