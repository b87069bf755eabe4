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
from datetime import datetime, timezone
import json
import os

import pytest

from modules.dataset import DatasetConfig, DuplicateEntry, EntryStatus, InvalidTransition, \
    Manifest, Quadruplet, UnknownEntry, build_manifest, build_quadruplet, dumps_manifest, \
    filter_manifest, input_images, load_manifest, review_mark, save_manifest, summarize, \
    updating, verify_manifest
from modules.evolution import LoopConfig
from modules.metrics import MetricBundle
from modules.program import Program, serialize_program
from modules.renderer import IoFailure, Raster, render, save_raster
from tests.conftest import segment

NOW = datetime(2024, 5, 1, 12, 30, 0, tzinfo=timezone.utc)


def entry(entry_id, cd, status=EntryStatus.Pending):
    return Quadruplet(id=entry_id, input_image='in/{}.png'.format(entry_id),
                      code='canvas 10 10\n', metrics=MetricBundle(cd, cd, 0.9, (10, 10)),
                      status=status)


def test_filter_is_strict_at_threshold():
    manifest = Manifest((entry('a', 9.999), entry('b', 10.0), entry('c', 0.0)))
    filtered = filter_manifest(manifest, 10.0)
    assert [e.status for e in filtered.entries] == [EntryStatus.AutoAccepted,
                                                    EntryStatus.AutoRejected,
                                                    EntryStatus.AutoAccepted]
    assert filter_manifest(manifest, 12.0).get('b').status is EntryStatus.AutoAccepted


def test_filter_rejects_failed_and_keeps_human_verdicts():
    failed = Quadruplet(id='f', input_image='in/f.png', error='renderer: broken')
    approved = entry('h', 50.0, EntryStatus.HumanApproved)
    filtered = filter_manifest(Manifest((failed, approved)))
    assert filtered.get('f').status is EntryStatus.AutoRejected
    assert filtered.get('h').status is EntryStatus.HumanApproved


def test_review_records_audit():
    manifest = filter_manifest(Manifest((entry('a', 1.0), entry('b', 20.0))))
    reviewed = review_mark(manifest, 'a', 'reject', 'alex', now=NOW)
    marked = reviewed.get('a')
    assert marked.status is EntryStatus.HumanRejected
    assert [a.to_dict() for a in marked.audit] == [{
        'reviewer': 'alex', 'verdict': 'reject', 'timestamp': '2024-05-01T12:30:00+00:00',
        'status_before': 'auto_accepted'}]
    assert manifest.get('a').status is EntryStatus.AutoAccepted


def test_review_transitions():
    manifest = filter_manifest(Manifest((entry('a', 1.0), entry('b', 20.0))))
    approved = review_mark(manifest, 'a', 'approve', 'sam', now=NOW)
    with pytest.raises(InvalidTransition):
        review_mark(approved, 'a', 'reject', 'sam', now=NOW)
    with pytest.raises(InvalidTransition) as err:
        review_mark(manifest, 'b', 'approve', 'sam', now=NOW)
    assert err.value.current == 'auto_rejected'
    with pytest.raises(UnknownEntry):
        review_mark(manifest, 'zz', 'approve', 'sam', now=NOW)
    with pytest.raises(ValueError):
        review_mark(manifest, 'a', 'maybe', 'sam', now=NOW)


def test_counts_and_summary():
    manifest = filter_manifest(Manifest((entry('a', 2.0), entry('b', 4.0), entry('c', 30.0),
                                         Quadruplet(id='d', input_image='d.png', error='x'))))
    counts = manifest.counts()
    assert counts['auto_accepted'] == 2
    assert counts['auto_rejected'] == 2
    assert counts['failed'] == 1
    summary = summarize(manifest)
    assert summary['total'] == 4
    assert summary['mean_cd'] == 3.0
    assert 'mean_cd' not in summarize(Manifest())


def test_manifest_file_round_trip(tmp_path):
    path = str(tmp_path / 'manifest.jsonl')
    manifest = review_mark(filter_manifest(Manifest((entry('a', 1.0), entry('b', 20.0)),
                                                    threshold_px=8.0), 8.0),
                           'a', 'approve', 'sam', now=NOW)
    save_manifest(manifest, path)
    lines = open(path, encoding='utf-8').read().splitlines()
    header = json.loads(lines[0])['manifest']
    assert header['version'] == 1
    assert header['threshold_px'] == 8.0
    assert header['counts']['human_approved'] == 1
    assert len(lines) == 3
    assert load_manifest(path) == manifest
    assert not os.path.exists(path + '.tmp')


def test_updating_rewrites_under_lock(tmp_path):
    path = str(tmp_path / 'manifest.jsonl')
    save_manifest(filter_manifest(Manifest((entry('a', 1.0),))), path)
    with updating(path) as holder:
        holder[0] = review_mark(holder[0], 'a', 'approve', 'sam', now=NOW)
    assert load_manifest(path).get('a').status is EntryStatus.HumanApproved


def test_load_missing_manifest(tmp_path):
    with pytest.raises(IoFailure):
        load_manifest(str(tmp_path / 'nothing.jsonl'))


def stored_entry(root, program: Program) -> Quadruplet:
    image = render(program)
    os.makedirs(os.path.join(root, 'rendered'), exist_ok=True)
    save_raster(image, os.path.join(root, 'rendered', 'x.png'))
    return Quadruplet(id='x', input_image='x.png', code=serialize_program(program),
                      rendered_image='rendered/x.png', rendered_hash=image.content_hash(),
                      metrics=MetricBundle(0.0, 0.0, 1.0, (1, 1)))


def test_verify_detects_changes(tmp_path, triangle_program):
    root = str(tmp_path)
    good = stored_entry(root, triangle_program)
    assert verify_manifest(Manifest((good,)), root) == []
    moved = serialize_program(triangle_program).replace('(40.00,160.00)', '(41.00,160.00)', 1)
    assert moved != good.code
    tampered = replace(good, code=moved)
    assert verify_manifest(Manifest((tampered,)), root) == ['x']
    unparsable = replace(good, code='canvas\n')
    assert verify_manifest(Manifest((unparsable,)), root) == ['x']
    os.remove(os.path.join(root, 'rendered', 'x.png'))
    assert verify_manifest(Manifest((good,)), root) == ['x']


def test_input_images(tmp_path):
    for name in ('b.png', 'a.pgm', 'a.rec.png', 'notes.txt'):
        (tmp_path / name).write_bytes(b'')
    assert [os.path.basename(p) for p in input_images(str(tmp_path))] == ['a.pgm', 'b.png']
    with pytest.raises(IoFailure):
        input_images(str(tmp_path / 'missing'))


def test_input_images_with_shared_stem(tmp_path, quiet_logger):
    image = render(Program(40, 40, (segment('s1', 5, 20, 35, 20),)))
    save_raster(image, str(tmp_path / 'a.png'))
    save_raster(image, str(tmp_path / 'a.pgm'))
    with pytest.raises(DuplicateEntry) as err:
        input_images(str(tmp_path))
    assert err.value.entry_id == 'a'
    assert err.value.exit_code == 2
    manifest_path = str(tmp_path / 'out' / 'manifest.jsonl')
    with pytest.raises(DuplicateEntry):
        build_manifest(str(tmp_path), manifest_path, logger=quiet_logger)
    assert not os.path.exists(os.path.join(str(tmp_path), 'out', 'rendered'))


def test_dataset_config_validation():
    with pytest.raises(ValueError):
        DatasetConfig(threshold_px=0.0)
    with pytest.raises(ValueError):
        DatasetConfig(jobs=0)


def test_build_manifest(tmp_path, quiet_logger):
    inputs = tmp_path / 'inputs'
    inputs.mkdir()
    save_raster(render(Program(120, 120, (segment('s1', 20, 60, 100, 60),))),
                str(inputs / 'line.png'))
    save_raster(Raster.blank(64, 64), str(inputs / 'blank.png'))
    (inputs / 'broken.png').write_bytes(b'not an image')
    manifest_path = str(tmp_path / 'out' / 'manifest.jsonl')
    cfg = DatasetConfig(loop=LoopConfig(max_iterations=2))
    manifest = build_manifest(str(inputs), manifest_path, cfg, logger=quiet_logger)

    assert manifest.ids() == ['blank', 'broken', 'line']
    assert all(e.status is EntryStatus.Pending for e in manifest.entries)
    blank = manifest.get('blank')
    assert blank.code == 'canvas 64 64\n'
    assert blank.metrics.cd == pytest.approx((64 ** 2 * 2) ** 0.5)
    broken = manifest.get('broken')
    assert broken.error.startswith('renderer: ')
    assert broken.metrics is None
    line = manifest.get('line')
    assert line.input_image == os.path.join('..', 'inputs', 'line.png')
    assert line.rendered_image == os.path.join('rendered', 'line.png')
    assert os.path.exists(os.path.join(tmp_path, 'out', 'rendered', 'line.png'))
    assert line.attributes['schema_version'] == 1
    assert verify_manifest(manifest, os.path.dirname(manifest_path)) == []

    filtered = filter_manifest(manifest)
    assert filtered.get('blank').status is EntryStatus.AutoRejected
    assert filtered.get('broken').status is EntryStatus.AutoRejected
    assert dumps_manifest(filtered).count('\n') == 4


def test_build_quadruplet_reconstructs_a_line(tmp_path, quiet_logger):
    source = str(tmp_path / 'stroke.png')
    save_raster(render(Program(120, 120, (segment('s1', 20, 30, 100, 90),))), source)
    cfg = DatasetConfig(loop=LoopConfig(max_iterations=3))
    quad = build_quadruplet(source, str(tmp_path), cfg, logger=quiet_logger)
    assert quad.id == 'stroke'
    assert quad.error is None
    assert quad.status is EntryStatus.Pending
    assert quad.metrics.cd < 10.0
    assert os.path.exists(os.path.join(str(tmp_path), quad.rendered_image))
    assert filter_manifest(Manifest((quad,))).get('stroke').status is EntryStatus.AutoAccepted
