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

""" The ``geo`` command: argument parsing, dispatch and the subcommands. """

from typing import List
import argparse
import json
import os
import sys

from modules.agents import AgentGateway, AgentRoles, CredentialMissing, HttpTransport, \
    MockTransport
from modules.anchoring import anchors_to_json, extract_raw_anchors
from modules.cli.runconfig import RunConfig
from modules.cli.selftest import selftest
from modules.dataset import build_manifest, filter_manifest, load_manifest, review_mark, \
    save_manifest, summarize, updating, verify_manifest
from modules.evolution import RefinerMode, run_loop
from modules.metrics import evaluate_pairs, measure
from modules.program import parse_program, serialize_program, synthetic_corpus
from modules.renderer import IoFailure, Raster, load_raster, render, render_overlay, \
    save_raster, standardize
from modules.skeleton import build_skeleton, verify_anchors
from modules.vep import project_errors
from utils.common import init_random
from utils.exceptions import GeoError
from utils.logger import GeoLogger, LogLevel

DEFAULT_OUT_DIR = './geo-out'


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def read_text(path: str) -> str:
    try:
        with open(path, 'r', encoding='utf-8') as source:
            return source.read()
    except OSError as err:
        raise IoFailure(path, err.strerror or str(err))


def write_text(path: str, text: str):
    try:
        with open(path, 'w', encoding='utf-8') as target:
            target.write(text)
    except OSError as err:
        raise IoFailure(path, err.strerror or str(err))


def _out_path(args, name: str) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, name)


def _load(args, path: str) -> Raster:
    image = load_raster(path)
    return standardize(image) if args.standardize else image


def _emit(args, payload, text: str = None):
    if args.json or text is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _agent(args, cfg: RunConfig, logger: GeoLogger, requested: bool):
    """ Agent roles when requested (or scripted with --agent-mock), else None.
    A real endpoint without credentials falls back to deterministic mode. """
    if args.agent_mock:
        try:
            transport = MockTransport.from_jsonl(args.agent_mock)
        except OSError as err:
            raise IoFailure(args.agent_mock, err.strerror or str(err))
    elif requested:
        transport = HttpTransport()
    else:
        return None
    gateway = AgentGateway(cfg.agent, transport, logger)
    try:
        gateway.check_credentials()
    except CredentialMissing as err:
        logger.warning('{}; continuing in deterministic mode'.format(err.message))
        return None
    return AgentRoles(gateway)


def cmd_render(args, cfg: RunConfig, logger: GeoLogger) -> int:
    program = parse_program(read_text(args.input))
    image = render(program)
    target = args.output or _out_path(args, _stem(args.input) + '.png')
    save_raster(image, target)
    _emit(args, {'output': target, 'hash': image.content_hash()},
          '{} ({}x{})'.format(target, image.width, image.height))
    return 0


def cmd_anchors(args, cfg: RunConfig, logger: GeoLogger) -> int:
    image = _load(args, args.input)
    agent = _agent(args, cfg, logger, requested=False)
    raw = extract_raw_anchors(image, cfg.anchor)
    anchors = verify_anchors(raw, image, cfg.skeleton, cfg.anchor.edge_threshold, agent, logger)
    entries = anchors_to_json(anchors)
    write_text(_out_path(args, _stem(args.input) + '.anchors.json'),
               json.dumps(entries, indent=1, sort_keys=True) + '\n')
    save_raster(render_overlay(image, anchors),
                _out_path(args, _stem(args.input) + '.anchors.png'))
    _emit(args, entries, '\n'.join('{} {} ({:.1f}, {:.1f}) score={:.3f}'.format(
        a.id, a.kind.value, a.pos.x, a.pos.y, a.score) for a in anchors))
    return 0


def cmd_skeleton(args, cfg: RunConfig, logger: GeoLogger) -> int:
    image = _load(args, args.input)
    text = read_text(args.text) if args.text else None
    agent = _agent(args, cfg, logger, requested=False)
    skeleton = build_skeleton(image, text, cfg.skeleton, cfg.anchor, agent, logger)
    write_text(_out_path(args, _stem(args.input) + '.skeleton.json'),
               skeleton.to_json(indent=1) + '\n')
    _emit(args, skeleton.to_dict())
    return 0


def cmd_metrics(args, cfg: RunConfig, logger: GeoLogger) -> int:
    bundle = measure(_load(args, args.first), _load(args, args.second))
    print(json.dumps({'cd': bundle.cd, 'hd': bundle.hd, 'ssim': bundle.ssim}, sort_keys=True))
    return 0


def cmd_diff(args, cfg: RunConfig, logger: GeoLogger) -> int:
    report = project_errors(_load(args, args.first), _load(args, args.second),
                            cfg=cfg.inspection)
    stem = _stem(args.first)
    save_raster(report.diff_image, _out_path(args, stem + '.diff.png'))
    write_text(_out_path(args, stem + '.diff.json'), report.to_json(indent=1) + '\n')
    _emit(args, report.to_dict(), str(report))
    return 0


def cmd_reconstruct(args, cfg: RunConfig, logger: GeoLogger) -> int:
    observation = _load(args, args.input)
    text = read_text(args.text) if args.text else None
    requested = cfg.loop.refiner_mode is not RefinerMode.Deterministic
    agent = _agent(args, cfg, logger, requested)
    skeleton = build_skeleton(observation, text, cfg.skeleton, cfg.anchor, agent, logger)
    program, state = run_loop(observation, text, skeleton, cfg.loop, agent=agent, logger=logger)

    stem = _stem(args.input)
    target = args.output or _out_path(args, stem + '.geo')
    write_text(target, serialize_program(program))
    final = render(program)
    save_raster(final, _out_path(args, stem + '.final.png'))
    write_text(_out_path(args, stem + '.history.jsonl'), state.history_jsonl())
    for report in state.reports:
        save_raster(report.diff_image,
                    _out_path(args, '{}.diff_{:02d}.png'.format(stem, report.iteration)))
    bundle = measure(final, observation)
    _emit(args, {'output': target, 'cd': bundle.cd, 'hd': bundle.hd, 'ssim': bundle.ssim,
                 'q': state.best_q, 'iterations': len(state.history),
                 'stop': state.stop_reason},
          '{}: cd={:.3f} hd={:.3f} ssim={:.4f} q={:.6f} ({} iterations, {})'.format(
              target, bundle.cd, bundle.hd, bundle.ssim, state.best_q, len(state.history),
              state.stop_reason or 'done'))
    return 0


def cmd_evaluate(args, cfg: RunConfig, logger: GeoLogger) -> int:
    """ Pairs ``<name>.png`` with ``<name>.rec.png`` inside a folder. """
    if not os.path.isdir(args.folder):
        raise IoFailure(args.folder, 'no such directory')
    names = sorted(name[:-len('.rec.png')] for name in os.listdir(args.folder)
                   if name.endswith('.rec.png'))
    names = [name for name in names if os.path.isfile(os.path.join(args.folder, name + '.png'))]
    pairs = [(_load(args, os.path.join(args.folder, name + '.rec.png')),
              _load(args, os.path.join(args.folder, name + '.png'))) for name in names]
    bundles, means = evaluate_pairs(pairs)
    payload = {'pairs': {name: bundle.to_dict() for name, bundle in zip(names, bundles)},
               'mean': means}
    lines = ['{}: cd={:.3f} hd={:.3f} ssim={:.4f}'.format(name, b.cd, b.hd, b.ssim)
             for name, b in zip(names, bundles)]
    if means:
        lines.append('mean: cd={cd:.3f} hd={hd:.3f} ssim={ssim:.4f}'.format(**means))
    _emit(args, payload, '\n'.join(lines) or 'no pairs')
    return 0


def cmd_corpus(args, cfg: RunConfig, logger: GeoLogger) -> int:
    written = []
    for name, program in synthetic_corpus(args.count, init_random(args.seed)):
        write_text(_out_path(args, name + '.geo'), serialize_program(program))
        save_raster(render(program), _out_path(args, name + '.png'))
        written.append(name)
    _emit(args, written, '{} programs written to {}'.format(len(written), args.out_dir))
    return 0


def cmd_dataset_build(args, cfg: RunConfig, logger: GeoLogger) -> int:
    requested = cfg.dataset.judge or cfg.loop.refiner_mode is not RefinerMode.Deterministic
    agent = _agent(args, cfg, logger, requested)
    manifest = build_manifest(args.folder, args.output, cfg.dataset, agent, logger)
    save_manifest(manifest, args.output)
    _emit(args, manifest.counts(), '{}: {} entries'.format(args.output, len(manifest.entries)))
    return 0


def cmd_dataset_filter(args, cfg: RunConfig, logger: GeoLogger) -> int:
    with updating(args.manifest) as holder:
        holder[0] = filter_manifest(holder[0], cfg.dataset.threshold_px)
        summary = summarize(holder[0])
    _emit(args, summary, ', '.join('{}={}'.format(k, summary[k]) for k in sorted(summary)))
    return 0


def cmd_dataset_review(args, cfg: RunConfig, logger: GeoLogger) -> int:
    verdict = 'approve' if args.approve else 'reject'
    with updating(args.manifest) as holder:
        holder[0] = review_mark(holder[0], args.id, verdict, args.reviewer)
        entry = holder[0].get(args.id)
    _emit(args, entry.to_dict(), '{}: {}'.format(entry.id, entry.status.value))
    return 0


def cmd_dataset_verify(args, cfg: RunConfig, logger: GeoLogger) -> int:
    manifest = load_manifest(args.manifest)
    broken = verify_manifest(manifest, os.path.dirname(os.path.abspath(args.manifest)))
    _emit(args, broken, '\n'.join(broken) if broken else 'all entries reproduce')
    return 1 if broken else 0


def cmd_selftest(args, cfg: RunConfig, logger: GeoLogger) -> int:
    passed, lines = selftest(logger=logger)
    print('\n'.join(lines))
    return 0 if passed else 1


def _add_mode(parser):
    parser.add_argument('--mode', choices=[mode.value for mode in RefinerMode], default=None,
                        help='refiner: deterministic, agent or hybrid')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='geo', description='geometric figure reconstruction')
    parser.add_argument('--config', help='file with "section.key = value" lines')
    parser.add_argument('--json', action='store_true', help='print JSON')
    parser.add_argument('--out-dir', default=DEFAULT_OUT_DIR, help='directory for outputs')
    parser.add_argument('--seed', type=int, default=None, help='seed the random generators')
    parser.add_argument('-v', '--verbose', action='store_true', help='trace every iteration')
    parser.add_argument('--log-file', action='store_true', help='log into <out-dir>/logs')
    parser.add_argument('--agent-mock', metavar='SCRIPT', default=None,
                        help='replay agent replies from a JSONL script')
    parser.add_argument('--standardize', action='store_true',
                        help='rescale input images to the 1000 px canvas')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    sub = commands.add_parser('render', help='render a .geo program')
    sub.add_argument('input')
    sub.add_argument('-o', '--output')
    sub.set_defaults(handler=cmd_render)

    sub = commands.add_parser('anchors', help='extract and verify anchors')
    sub.add_argument('input')
    sub.set_defaults(handler=cmd_anchors)

    sub = commands.add_parser('skeleton', help='build the geometric skeleton')
    sub.add_argument('input')
    sub.add_argument('--text', help='file with the problem text')
    sub.set_defaults(handler=cmd_skeleton)

    for name, handler in (('metrics', cmd_metrics), ('diff', cmd_diff)):
        sub = commands.add_parser(name, help='compare a reconstruction with an observation')
        sub.add_argument('first')
        sub.add_argument('second')
        sub.set_defaults(handler=handler)

    sub = commands.add_parser('reconstruct', help='reconstruct a program from an image')
    sub.add_argument('input')
    sub.add_argument('--text', help='file with the problem text')
    _add_mode(sub)
    sub.add_argument('--eps', type=float, default=None, help='Hausdorff stop threshold (px)')
    sub.add_argument('--max-iter', type=int, default=None, help='correction steps')
    sub.add_argument('--phase1-only', action='store_true', help='skip the correction loop')
    sub.add_argument('-o', '--output', help='program file (.geo)')
    sub.set_defaults(handler=cmd_reconstruct)

    sub = commands.add_parser('evaluate', help='average metrics over <name>.rec.png pairs')
    sub.add_argument('folder')
    sub.set_defaults(handler=cmd_evaluate)

    sub = commands.add_parser('corpus', help='write a synthetic corpus')
    sub.add_argument('--count', type=int, default=50)
    sub.set_defaults(handler=cmd_corpus)

    dataset = commands.add_parser('dataset', help='quadruplet dataset pipeline')
    steps = dataset.add_subparsers(dest='step', metavar='step')
    steps.required = True
    sub = steps.add_parser('build')
    sub.add_argument('folder')
    sub.add_argument('-o', '--output', required=True, help='manifest (.jsonl)')
    sub.add_argument('--jobs', type=int, default=None)
    sub.add_argument('--judge', action='store_true', default=None,
                     help='attach visual judge scores')
    sub.add_argument('--threshold', type=float, default=None)
    _add_mode(sub)
    sub.set_defaults(handler=cmd_dataset_build)
    sub = steps.add_parser('filter')
    sub.add_argument('manifest')
    sub.add_argument('--threshold', type=float, default=None)
    sub.set_defaults(handler=cmd_dataset_filter)
    sub = steps.add_parser('review')
    sub.add_argument('manifest')
    sub.add_argument('--id', required=True)
    verdict = sub.add_mutually_exclusive_group(required=True)
    verdict.add_argument('--approve', action='store_true')
    verdict.add_argument('--reject', action='store_true')
    sub.add_argument('--reviewer', required=True)
    sub.set_defaults(handler=cmd_dataset_review)
    sub = steps.add_parser('verify')
    sub.add_argument('manifest')
    sub.set_defaults(handler=cmd_dataset_verify)

    sub = commands.add_parser('selftest', help='run the offline self checks')
    sub.set_defaults(handler=cmd_selftest)
    return parser


def flag_overrides(args) -> dict:
    """ Typed per-section values given on the command line. """
    mode = getattr(args, 'mode', None)
    max_iter = 0 if getattr(args, 'phase1_only', False) else getattr(args, 'max_iter', None)
    return {
        'loop': {'epsilon_hd': getattr(args, 'eps', None), 'max_iterations': max_iter,
                 'refiner_mode': RefinerMode(mode) if mode else None},
        'dataset': {'threshold_px': getattr(args, 'threshold', None),
                    'jobs': getattr(args, 'jobs', None), 'judge': getattr(args, 'judge', None),
                    'standardize': args.standardize or None},
    }


def _inputs(args) -> str:
    names = [getattr(args, key, None) for key in ('input', 'first', 'second', 'folder',
                                                    'manifest')]
    return ' '.join(name for name in names if name) or args.command


def make_logger(args) -> GeoLogger:
    level = LogLevel.ITERATIONS if args.verbose else LogLevel.ERRORS
    file_level = LogLevel.ITERATIONS if args.log_file else LogLevel.NONE
    return GeoLogger(console_log_lvl=level, file_log_lvl=file_level,
                     logfile_folder=os.path.join(args.out_dir, 'logs'))


def dispatch(argv: List[str] = None, logger: GeoLogger = None) -> int:
    """ Runs one ``geo`` invocation and returns its exit code: 0 on success,
    1 for domain errors, 2 for usage errors and 3 for agent errors. """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    logger = logger if logger is not None else make_logger(args)
    if args.seed is not None:
        init_random(args.seed)
    try:
        cfg = RunConfig.load(args.config, overrides=flag_overrides(args))
        return args.handler(args, cfg, logger)
    except GeoError as err:
        print('{}: {}: {}'.format(err.module, _inputs(args), err.message), file=sys.stderr)
        return err.exit_code
