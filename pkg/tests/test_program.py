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

from modules.program import Arc, DanglingReference, DashStyle, DuplicateId, Label, Point2D, \
    Primitive, Program, ProgramSyntaxError, Segment, Style, ViolationKind, parse_program, \
    random_program, serialize_program, synthetic_corpus, validate_consistency, CORPUS_KINDS
from tests.conftest import segment


def test_parse_resolves_inline_names():
    program = parse_program('canvas 100 80\n'
                            'segment s1 A:(10,10) (50,10)\n'
                            'segment s2 A (10,60)  # shares A\n')
    assert (program.width, program.height) == (100, 80)
    assert program.ids() == ['s1', 's2']
    assert program.get('s2').shape.p1 == Point2D(10.0, 10.0)


def test_parse_style_applies_to_following_statements():
    program = parse_program('canvas 50 50\n'
                            'segment s1 (1,1) (9,9)\n'
                            'style width 3 dash dashed\n'
                            'segment s2 (1,9) (9,1)\n')
    assert program.get('s1').style == Style()
    assert program.get('s2').style.stroke_width == 3.0
    assert program.get('s2').style.dash is DashStyle.Dashed


def test_arc_angles_are_normalized():
    program = parse_program('canvas 100 100\narc a1 (50,50) 20 -90 450\n')
    shape = program.get('a1').shape
    assert isinstance(shape, Arc)
    assert (shape.start_deg, shape.end_deg) == (270.0, 90.0)


def test_unknown_statement_reports_line():
    with pytest.raises(ProgramSyntaxError) as err:
        parse_program('canvas 10 10\nfoo x\n')
    assert err.value.line == 2
    assert err.value.column == 1


def test_missing_canvas():
    with pytest.raises(ProgramSyntaxError):
        parse_program('segment s1 (1,1) (2,2)\n')


def test_duplicate_id():
    with pytest.raises(DuplicateId) as err:
        parse_program('canvas 10 10\nsegment s1 (1,1) (5,5)\nsegment s1 (2,2) (6,6)\n')
    assert err.value.line == 3


def test_dangling_reference():
    with pytest.raises(DanglingReference) as err:
        parse_program('canvas 10 10\nsegment s1 B (5,5)\n')
    assert err.value.id == 'B'


def test_empty_program_serialization():
    assert serialize_program(Program()) == 'canvas 1000 1000\n'


def test_serialization_emits_style_only_on_change():
    program = Program(100, 100, (segment('s1', 1, 1, 9, 9), segment('s2', 2, 2, 8, 8),
                                 Primitive('s3', Segment(Point2D(1, 9), Point2D(9, 1)),
                                           Style(stroke_width=4.0))))
    text = serialize_program(program)
    assert text.count('style') == 1
    assert 'style width 4.00\nsegment s3' in text


def test_custom_defaults_round_trip():
    defaults = Style(stroke_width=3.0)
    program = Program(100, 100, (Primitive('s1', Segment(Point2D(1, 1), Point2D(9, 9)),
                                           defaults),), defaults)
    text = serialize_program(program)
    assert text.splitlines()[1] == 'defaults width 3.00'
    assert parse_program(text) == program


def test_serialization_is_idempotent_on_generated_programs():
    for _, program in synthetic_corpus(24, seed=5):
        text = serialize_program(program)
        assert parse_program(text) == program
        assert serialize_program(parse_program(text)) == text


def test_label_text_escapes_round_trip():
    texts = ['line one\nline two', 'say "hi"', 'back\\', 'a\\nb', 'cr\rend']
    program = Program(100, 100, tuple(Primitive('l{}'.format(idx), Label(text, Point2D(10, 10)))
                                      for idx, text in enumerate(texts)))
    text = serialize_program(program)
    assert len(text.splitlines()) == 1 + len(texts)
    assert [prim.shape.text for prim in parse_program(text)] == texts
    assert serialize_program(parse_program(text)) == text


def test_corpus_is_seeded_and_valid():
    assert synthetic_corpus(6, seed=1) == synthetic_corpus(6, seed=1)
    for name, program in synthetic_corpus(12, seed=2):
        assert name.split('_')[0] in CORPUS_KINDS
        assert 2 <= len(program) <= 8
        assert validate_consistency(program) == []


def test_random_program_rejects_unknown_kind():
    with pytest.raises(ValueError):
        random_program(np.random.default_rng(0), 'hexagon')


def test_validation_reports_degenerate_and_breach():
    program = Program(100, 100, (segment('s1', 5, 5, 5, 5),
                                 Primitive('s2', Segment(Point2D(1, 1), Point2D(9, 9)),
                                           Style(stroke_width=30.0))))
    violations = validate_consistency(program)
    kinds = {(v.primitive_id, v.kind) for v in violations}
    assert ('s1', ViolationKind.Degenerate) in kinds
    assert ('s2', ViolationKind.InvariantBreach) in kinds


def test_coordinates_outside_margin_breach():
    program = Program(100, 100, (segment('s1', 5, 5, 500, 5),))
    assert [v.kind for v in validate_consistency(program)] == [ViolationKind.InvariantBreach]


def test_fresh_id_skips_used_ids():
    program = Program(100, 100, (segment('S1', 1, 1, 9, 9), segment('S2', 2, 2, 8, 8)))
    assert program.fresh_id('S') == 'S3'
    assert program.fresh_id('C') == 'C1'
