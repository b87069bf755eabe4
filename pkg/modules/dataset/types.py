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

""" Dataset entries (quadruplets) and the manifest holding them. """

from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Optional, Tuple

from modules.metrics import MetricBundle

MANIFEST_VERSION = 1


class EntryStatus(Enum):
    Pending = 'pending'
    AutoAccepted = 'auto_accepted'
    AutoRejected = 'auto_rejected'
    HumanApproved = 'human_approved'
    HumanRejected = 'human_rejected'


HUMAN_STATUSES = (EntryStatus.HumanApproved, EntryStatus.HumanRejected)
ACCEPTED_STATUSES = (EntryStatus.AutoAccepted, EntryStatus.HumanApproved)


@dataclass(frozen=True)
class AuditRecord:
    reviewer: str
    verdict: str
    timestamp: str
    status_before: str

    def to_dict(self) -> dict:
        return {'reviewer': self.reviewer, 'verdict': self.verdict,
                'timestamp': self.timestamp, 'status_before': self.status_before}

    @classmethod
    def from_dict(cls, entry: dict) -> 'AuditRecord':
        return cls(entry['reviewer'], entry['verdict'], entry['timestamp'],
                   entry.get('status_before', ''))


@dataclass(frozen=True)
class Quadruplet:
    """ Input image, its geometric attributes (skeleton JSON), the program and
    its rendering, plus metrics and review status. Paths are relative to the
    manifest; ``error`` is set when the pipeline failed on the input. """
    id: str
    input_image: str
    attributes: Optional[dict] = None
    code: str = ''
    rendered_image: Optional[str] = None
    rendered_hash: Optional[str] = None
    metrics: Optional[MetricBundle] = None
    status: EntryStatus = EntryStatus.Pending
    error: Optional[str] = None
    audit: Tuple[AuditRecord, ...] = ()
    judge: Optional[Dict[str, float]] = None

    @property
    def is_valid(self) -> bool:
        return self.error is None and self.metrics is not None

    def with_status(self, status: EntryStatus) -> 'Quadruplet':
        return replace(self, status=status)

    def to_dict(self) -> dict:
        entry = {'id': self.id, 'input_image': self.input_image, 'attributes': self.attributes,
                 'code': self.code, 'rendered_image': self.rendered_image,
                 'rendered_hash': self.rendered_hash,
                 'metrics': self.metrics.to_dict() if self.metrics is not None else None,
                 'status': self.status.value, 'audit': [a.to_dict() for a in self.audit]}
        if self.error is not None:
            entry['error'] = self.error
        if self.judge is not None:
            entry['judge'] = self.judge
        return entry

    @classmethod
    def from_dict(cls, entry: dict) -> 'Quadruplet':
        metrics = entry.get('metrics')
        return cls(id=entry['id'], input_image=entry['input_image'],
                   attributes=entry.get('attributes'), code=entry.get('code', ''),
                   rendered_image=entry.get('rendered_image'),
                   rendered_hash=entry.get('rendered_hash'),
                   metrics=MetricBundle.from_dict(metrics) if metrics else None,
                   status=EntryStatus(entry.get('status', EntryStatus.Pending.value)),
                   error=entry.get('error'),
                   audit=tuple(AuditRecord.from_dict(a) for a in entry.get('audit', [])),
                   judge=entry.get('judge'))


@dataclass(frozen=True)
class Manifest:
    entries: Tuple[Quadruplet, ...] = ()
    threshold_px: float = 10.0

    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in EntryStatus}
        for entry in self.entries:
            counts[entry.status.value] += 1
        counts['failed'] = sum(1 for entry in self.entries if not entry.is_valid)
        return counts

    def get(self, entry_id: str) -> Optional[Quadruplet]:
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        return None

    def replaced(self, entry: Quadruplet) -> 'Manifest':
        return replace(self, entries=tuple(entry if e.id == entry.id else e
                                           for e in self.entries))

    def header(self) -> dict:
        return {'manifest': {'version': MANIFEST_VERSION, 'threshold_px': self.threshold_px,
                             'counts': self.counts()}}

    def ids(self) -> List[str]:
        return [entry.id for entry in self.entries]
