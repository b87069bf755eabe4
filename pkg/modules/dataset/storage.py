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

""" Manifest persistence as JSONL: a header line, then one entry per line.
Writers hold an exclusive advisory lock on a sidecar lock file. """

from contextlib import contextmanager
import fcntl
import json
import os

from modules.dataset.types import Manifest, Quadruplet
from modules.renderer import IoFailure


@contextmanager
def manifest_lock(path: str):
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    with open(os.path.abspath(path) + '.lock', 'w') as lock:
        fcntl.flock(lock.fileno(), fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(lock.fileno(), fcntl.LOCK_UN)


def dumps_manifest(manifest: Manifest) -> str:
    lines = [json.dumps(manifest.header(), sort_keys=True)]
    lines.extend(json.dumps(entry.to_dict(), sort_keys=True) for entry in manifest.entries)
    return '\n'.join(lines) + '\n'


def loads_manifest(text: str) -> Manifest:
    threshold = 10.0
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        data = json.loads(line)
        if 'manifest' in data:
            threshold = float(data['manifest'].get('threshold_px', threshold))
        else:
            entries.append(Quadruplet.from_dict(data))
    return Manifest(tuple(entries), threshold)


def load_manifest(path: str) -> Manifest:
    try:
        with open(path, 'r', encoding='utf-8') as source:
            return loads_manifest(source.read())
    except OSError as err:
        raise IoFailure(path, err.strerror or str(err))


def save_manifest(manifest: Manifest, path: str):
    """ Writes the manifest atomically under the lock. """
    tmp_path = path + '.tmp'
    with manifest_lock(path):
        try:
            with open(tmp_path, 'w', encoding='utf-8') as target:
                target.write(dumps_manifest(manifest))
            os.replace(tmp_path, path)
        except OSError as err:
            raise IoFailure(path, err.strerror or str(err))


@contextmanager
def updating(path: str):
    """ Read-modify-write of a manifest file under one lock; the block receives
    a one-element list holding the manifest and may replace it. """
    with manifest_lock(path):
        holder = [load_manifest(path)]
        yield holder
        tmp_path = path + '.tmp'
        with open(tmp_path, 'w', encoding='utf-8') as target:
            target.write(dumps_manifest(holder[0]))
        os.replace(tmp_path, path)
