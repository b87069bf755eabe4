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

""" Synthesis, filtering and verification of reconstruction quadruplets. """

from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Dict, List
import os

from modules.agents import judge
from modules.anchoring import AnchorConfig
from modules.dataset.exceptions import DuplicateEntry, InvalidTransition, UnknownEntry
from modules.dataset.types import ACCEPTED_STATUSES, HUMAN_STATUSES, AuditRecord, \
    EntryStatus, Manifest, Quadruplet
from modules.evolution import LoopConfig, run_loop
from modules.metrics import measure
from modules.program import parse_program, serialize_program
from modules.renderer import IoFailure, load_raster, render, save_raster, standardize
from modules.skeleton import SkeletonConfig, build_skeleton
from utils.exceptions import AgentError, GeoError
from utils.logger import GeoLogger

IMAGE_SUFFIXES = ('.png', '.pgm', '.ppm', '.bmp', '.jpg', '.jpeg')
RENDERED_DIR = 'rendered'
VERDICTS = {'approve': EntryStatus.HumanApproved, 'reject': EntryStatus.HumanRejected}


@dataclass(frozen=True)
class DatasetConfig:
    """ Settings of ``build_manifest``.

    Args:
        threshold_px (float): Chamfer gate recorded in the manifest
        loop (LoopConfig): reconstruction loop settings
        standardize (bool): rescale inputs to the 1000 px canvas first
        judge (bool): attach visual judge scores (needs an agent)
        jobs (int): number of parallel workers
    """
    threshold_px: float = 10.0
    loop: LoopConfig = field(default_factory=LoopConfig)
    skeleton: SkeletonConfig = field(default_factory=SkeletonConfig)
    anchoring: AnchorConfig = field(default_factory=AnchorConfig)
    standardize: bool = False
    judge: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.threshold_px <= 0:
            raise ValueError('threshold_px must be positive')
        if self.jobs < 1:
            raise ValueError('jobs must be at least 1')


def quadruplet_id(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _relative(path: str, root: str) -> str:
    return os.path.relpath(os.path.abspath(path), os.path.abspath(root))


def build_quadruplet(path: str, root: str, cfg: DatasetConfig = DatasetConfig(), agent=None,
                     logger: GeoLogger = None) -> Quadruplet:
    """ Reconstructs one input image into a pending quadruplet.

    The rendered image is written to ``<root>/rendered/<id>.png``; all paths in
    the entry are relative to ``root``. Pipeline errors do not propagate, they
    are recorded on the entry as ``error``.
    """
    logger = logger if logger is not None else GeoLogger()
    name = quadruplet_id(path)
    entry = Quadruplet(id=name, input_image=_relative(path, root))
    try:
        observation = load_raster(path)
        if cfg.standardize:
            observation = standardize(observation)
        skeleton = build_skeleton(observation, None, cfg.skeleton, cfg.anchoring, agent, logger)
        program, _ = run_loop(observation, skeleton=skeleton, cfg=cfg.loop, agent=agent,
                              logger=logger)
        reconstruction = render(program)
        target = os.path.join(root, RENDERED_DIR, name + '.png')
        os.makedirs(os.path.dirname(target), exist_ok=True)
        save_raster(reconstruction, target)
        entry = replace(entry, attributes=skeleton.to_dict(), code=serialize_program(program),
                        rendered_image=_relative(target, root),
                        rendered_hash=reconstruction.content_hash(),
                        metrics=measure(reconstruction, observation))
    except GeoError as err:
        logger.error('{}: {}: {}'.format(err.module, path, err.message))
        return replace(entry, error='{}: {}'.format(err.module, err.message))

    if cfg.judge and agent is not None:
        try:
            scores = judge(agent.gateway, observation, reconstruction)
            entry = replace(entry, judge=scores.to_dict())
        except AgentError as err:
            logger.info('judge skipped for {}: {}'.format(name, err.message))
    return entry


def _build_one(args) -> Quadruplet:
    path, root, cfg = args
    return build_quadruplet(path, root, cfg)


def input_images(folder: str) -> List[str]:
    """ Image files directly inside ``folder`` in name order; reconstructions
    (``*.rec.png``) are skipped.

    Raises:
        DuplicateEntry: two images share a stem (e.g. ``a.png`` and ``a.bmp``)
    """
    if not os.path.isdir(folder):
        raise IoFailure(folder, 'no such directory')
    names = sorted(name for name in os.listdir(folder)
                   if name.lower().endswith(IMAGE_SUFFIXES) and not name.endswith('.rec.png'))
    seen = {}
    for name in names:
        stem = quadruplet_id(name)
        if stem in seen:
            raise DuplicateEntry(stem, (seen[stem], name))
        seen[stem] = name
    return [os.path.join(folder, name) for name in names]


def _executor(cfg: DatasetConfig, agent) -> Executor:
    # agent gateways hold locks and sessions, so they stay in this process
    if agent is not None:
        return ThreadPoolExecutor(max_workers=cfg.jobs)
    return ProcessPoolExecutor(max_workers=cfg.jobs)


def build_manifest(folder: str, manifest_path: str, cfg: DatasetConfig = DatasetConfig(),
                   agent=None, logger: GeoLogger = None) -> Manifest:
    """ Builds one quadruplet per input image; entries keep the input order. """
    logger = logger if logger is not None else GeoLogger()
    root = os.path.dirname(os.path.abspath(manifest_path))
    paths = input_images(folder)
    if cfg.jobs == 1 or len(paths) < 2:
        entries = [build_quadruplet(path, root, cfg, agent, logger) for path in paths]
    elif agent is not None:
        with _executor(cfg, agent) as pool:
            entries = list(pool.map(lambda p: build_quadruplet(p, root, cfg, agent, logger),
                                    paths))
    else:
        with _executor(cfg, agent) as pool:
            entries = list(pool.map(_build_one, [(path, root, cfg) for path in paths]))
    manifest = Manifest(tuple(entries), cfg.threshold_px)
    logger.result('built {} entries from {} ({} failed)'.format(
        len(entries), folder, manifest.counts()['failed']))
    return manifest


def filter_manifest(manifest: Manifest, threshold_px: float = 10.0) -> Manifest:
    """ Applies the Chamfer gate ``cd < threshold_px``.

    Human verdicts are kept as they are; failed entries are rejected.
    """
    entries = []
    for entry in manifest.entries:
        if entry.status in HUMAN_STATUSES:
            entries.append(entry)
        elif entry.is_valid and entry.metrics.cd < threshold_px:
            entries.append(entry.with_status(EntryStatus.AutoAccepted))
        else:
            entries.append(entry.with_status(EntryStatus.AutoRejected))
    return Manifest(tuple(entries), threshold_px)


def review_mark(manifest: Manifest, entry_id: str, verdict: str, reviewer: str,
                now: datetime = None) -> Manifest:
    """ Records a human verdict ('approve' or 'reject') on an automatically
    accepted entry. Human verdicts are final.

    Raises:
        UnknownEntry: no entry with that id
        InvalidTransition: the entry is not AutoAccepted
    """
    if verdict not in VERDICTS:
        raise ValueError('verdict must be one of {}'.format(', '.join(sorted(VERDICTS))))
    entry = manifest.get(entry_id)
    if entry is None:
        raise UnknownEntry(entry_id)
    status = VERDICTS[verdict]
    if entry.status is not EntryStatus.AutoAccepted:
        raise InvalidTransition(entry_id, entry.status.value, status.value)
    now = now if now is not None else datetime.now(timezone.utc)
    record = AuditRecord(reviewer, verdict, now.isoformat(timespec='seconds'),
                         entry.status.value)
    return manifest.replaced(replace(entry, status=status, audit=entry.audit + (record,)))


def verify_manifest(manifest: Manifest, root: str) -> List[str]:
    """ Ids of entries whose stored rendering no longer matches their code:
    the code fails to parse or render, re-rendering gives another hash, or
    the image file under ``root`` differs. """
    broken = []
    for entry in manifest.entries:
        if not entry.is_valid:
            continue
        try:
            rendered_hash = render(parse_program(entry.code)).content_hash()
            stored = load_raster(os.path.join(root, entry.rendered_image)).content_hash()
        except GeoError:
            broken.append(entry.id)
            continue
        if rendered_hash != entry.rendered_hash or stored != entry.rendered_hash:
            broken.append(entry.id)
    return broken


def summarize(manifest: Manifest) -> Dict[str, float]:
    """ Counts per status plus mean CD and HD over accepted entries. """
    summary = dict(manifest.counts())
    summary['total'] = len(manifest.entries)
    accepted = [e.metrics for e in manifest.entries
                if e.status in ACCEPTED_STATUSES and e.metrics is not None]
    if accepted:
        summary['mean_cd'] = sum(m.cd for m in accepted) / len(accepted)
        summary['mean_hd'] = sum(m.hd for m in accepted) / len(accepted)
    return summary
