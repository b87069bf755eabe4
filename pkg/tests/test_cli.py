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
import os
import subprocess
import sys

import pytest

from modules.agents.types import ENDPOINT_VAR, KEY_VAR
from modules.cli import ConfigError, RunConfig, dispatch, read_config_file, selftest
from modules.cli.selftest import check_determinism, check_identity, check_oracle
from modules.dataset import EntryStatus, Manifest, Quadruplet, load_manifest, save_manifest
from modules.evolution import RefinerMode
from modules.metrics import MetricBundle
from modules.program import Program, serialize_program
from modules.renderer import Raster, render, save_raster
from tests.conftest import segment, triangle
from utils.logger import GeoLogger, LogLevel


@pytest.fixture
def workspace(tmp_path):
    """ A triangle program, its rendering and an output directory. """
    program = triangle()
    geo = tmp_path / 'tri.geo'
    geo.write_text(serialize_program(program))
    save_raster(render(program), str(tmp_path / 'tri.png'))
    return tmp_path


def run(argv, quiet_logger):
    return dispatch(argv, logger=quiet_logger)


def test_render_command(workspace, quiet_logger, capsys):
    out = str(workspace / 'out')
    code = run(['--json', '--out-dir', out, 'render', str(workspace / 'tri.geo')], quiet_logger)
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['output'] == os.path.join(out, 'tri.png')
    assert payload['hash'] == render(triangle()).content_hash()
    assert os.path.exists(payload['output'])


def test_syntax_error_exit_code(tmp_path, quiet_logger, capsys):
    bad = tmp_path / 'bad.geo'
    bad.write_text('canvas 10 10\nsquare s1\n')
    assert run(['render', str(bad)], quiet_logger) == 1
    assert capsys.readouterr().err.startswith('geom_program: ')


def test_metrics_command(workspace, quiet_logger, capsys):
    image = str(workspace / 'tri.png')
    assert run(['metrics', image, image], quiet_logger) == 0
    assert json.loads(capsys.readouterr().out) == {'cd': 0.0, 'hd': 0.0, 'ssim': 1.0}


def test_metrics_size_mismatch(workspace, quiet_logger, capsys):
    small = str(workspace / 'small.png')
    save_raster(Raster.blank(50, 50), small)
    assert run(['metrics', small, str(workspace / 'tri.png')], quiet_logger) == 1
    assert capsys.readouterr().err.startswith('metrics: {} '.format(small))


def test_usage_errors(workspace, quiet_logger, capsys):
    assert run(['bogus'], quiet_logger) == 2
    config = workspace / 'geo.conf'
    config.write_text('loop.nonsense = 3\n')
    assert run(['--config', str(config), 'metrics', 'a.png', 'b.png'], quiet_logger) == 2
    assert capsys.readouterr().err.startswith('cli: ')


def test_missing_credentials_fall_back_to_deterministic(workspace, monkeypatch, capsys):
    monkeypatch.delenv(ENDPOINT_VAR, raising=False)
    monkeypatch.delenv(KEY_VAR, raising=False)
    logger = GeoLogger(console_log_lvl=LogLevel.INFO)
    code = dispatch(['--json', '--out-dir', str(workspace / 'out'), 'reconstruct',
                     str(workspace / 'tri.png'), '--mode', 'agent', '--phase1-only'], logger=logger)
    assert code == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)['iterations'] == 1
    assert 'continuing in deterministic mode' in captured.err
    assert (workspace / 'out' / 'tri.geo').exists()


def test_phase_one_reconstruction(workspace, quiet_logger, capsys):
    out = workspace / 'out'
    code = run(['--json', '--out-dir', str(out), 'reconstruct', str(workspace / 'tri.png'),
                '--phase1-only'], quiet_logger)
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['iterations'] == 1
    for name in ('tri.geo', 'tri.final.png', 'tri.history.jsonl', 'tri.diff_00.png'):
        assert (out / name).exists(), name
    assert len((out / 'tri.history.jsonl').read_text().splitlines()) == 1


def test_evaluate_command(workspace, quiet_logger, capsys):
    save_raster(render(triangle()), str(workspace / 'tri.rec.png'))
    assert run(['--json', 'evaluate', str(workspace)], quiet_logger) == 0
    payload = json.loads(capsys.readouterr().out)
    assert list(payload['pairs']) == ['tri']
    assert payload['mean']['cd'] == 0.0
    assert run(['evaluate', str(workspace / 'nowhere')], quiet_logger) == 1


def test_corpus_command(tmp_path, quiet_logger):
    out = tmp_path / 'corpus'
    assert run(['--seed', '4', '--out-dir', str(out), 'corpus', '--count', '3'],
               quiet_logger) == 0
    assert len(list(out.glob('*.geo'))) == 3
    assert len(list(out.glob('*.png'))) == 3


def test_dataset_commands(tmp_path, quiet_logger):
    program = Program(60, 60, (segment('s1', 10, 30, 50, 30),))
    image = render(program)
    save_raster(image, str(tmp_path / 'rendered.png'))
    entries = (Quadruplet('good', 'good.png', code=serialize_program(program),
                          rendered_image='rendered.png', rendered_hash=image.content_hash(),
                          metrics=MetricBundle(1.5, 3.0, 0.9, (41, 41))),
               Quadruplet('poor', 'poor.png', code=serialize_program(program),
                          rendered_image='rendered.png', rendered_hash=image.content_hash(),
                          metrics=MetricBundle(25.0, 40.0, 0.2, (41, 80))))
    manifest = str(tmp_path / 'manifest.jsonl')
    save_manifest(Manifest(entries), manifest)

    assert run(['dataset', 'filter', manifest], quiet_logger) == 0
    assert [e.status for e in load_manifest(manifest).entries] == [EntryStatus.AutoAccepted,
                                                                   EntryStatus.AutoRejected]
    assert run(['dataset', 'review', manifest, '--id', 'good', '--approve',
                '--reviewer', 'kim'], quiet_logger) == 0
    assert load_manifest(manifest).get('good').status is EntryStatus.HumanApproved
    assert run(['dataset', 'review', manifest, '--id', 'poor', '--approve',
                '--reviewer', 'kim'], quiet_logger) == 1
    assert run(['dataset', 'review', manifest, '--id', 'ghost', '--reject',
                '--reviewer', 'kim'], quiet_logger) == 1
    assert run(['dataset', 'verify', manifest], quiet_logger) == 0
    save_raster(Raster.blank(60, 60), str(tmp_path / 'rendered.png'))
    assert run(['dataset', 'verify', manifest], quiet_logger) == 1


def test_config_precedence(tmp_path):
    config = tmp_path / 'geo.conf'
    config.write_text('# tuned for scans\n'
                      'loop.max_iterations = 4\n'
                      'loop.refiner_mode = hybrid\n'
                      'agent.model = file-model  # pinned\n'
                      'agent.backoff = 0.5, 1\n'
                      'dataset.judge = yes\n')
    cfg = RunConfig.load(str(config), environ={'GEO_AGENT_MODEL': 'env-model',
                                               'GEO_AGENT_TIMEOUT': '9'},
                         overrides={'loop': {'max_iterations': 7, 'epsilon_hd': None}})
    assert cfg.loop.max_iterations == 7
    assert cfg.loop.epsilon_hd == 5.0
    assert cfg.loop.refiner_mode is RefinerMode.Hybrid
    assert cfg.agent.model == 'file-model'
    assert cfg.agent.timeout == 9.0
    assert cfg.agent.backoff == (0.5, 1.0)
    assert cfg.dataset.judge is True
    assert cfg.dataset.loop is cfg.loop


def test_config_errors(tmp_path):
    config = tmp_path / 'geo.conf'
    config.write_text('loop.max_iterations = many\n')
    with pytest.raises(ConfigError):
        read_config_file(str(config))
    config.write_text('no equals sign\n')
    with pytest.raises(ConfigError):
        read_config_file(str(config))
    config.write_text('loop.epsilon_hd = -1\n')
    with pytest.raises(ConfigError):
        RunConfig.load(str(config), environ={})
    with pytest.raises(ConfigError):
        RunConfig.load(environ={}, overrides={'loop': {'objective': 1}})


def test_metric_oracle_check():
    assert check_oracle()[0]
    ok, detail = check_oracle(chamfer=lambda first, second: 0.0)
    assert not ok
    assert detail.startswith('50 pairs')


def test_fixed_point_checks():
    assert check_identity()[0]
    assert check_determinism(3)[0]


@pytest.mark.slow
def test_selftest_reports_broken_metric(quiet_logger):
    passed, lines = selftest(chamfer=lambda first, second: 0.0, logger=quiet_logger)
    assert not passed
    assert lines[0].startswith('FAIL metric oracle')
    assert lines[1].startswith('PASS identity fixed point')
    assert lines[2].startswith('PASS renderer determinism')
    assert len(lines) == 4


def test_render_is_identical_across_processes(workspace):
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    hashes = []
    for run_no in range(2):
        out = str(workspace / 'run{}'.format(run_no))
        finished = subprocess.run([sys.executable, os.path.join(root, 'run_geo.py'), '--json',
                                   '--out-dir', out, 'render', str(workspace / 'tri.geo')],
                                  cwd=root, capture_output=True, text=True, timeout=300)
        assert finished.returncode == 0, finished.stderr
        hashes.append(json.loads(finished.stdout)['hash'])
    assert hashes[0] == hashes[1] == render(triangle()).content_hash()
