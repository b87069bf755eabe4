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

""" Bookkeeping of one reconstruction run. """

from dataclasses import dataclass, field
from typing import List
import json

from modules.metrics import MetricBundle, ObjectiveBreakdown
from modules.program import Program
from modules.vep import DiffReport


@dataclass(frozen=True)
class HistoryEntry:
    t: int
    cd: float
    hd: float
    q: float
    note: str = ''

    def to_dict(self) -> dict:
        entry = {'t': self.t, 'cd': round(self.cd, 6), 'hd': round(self.hd, 6),
                 'q': round(self.q, 9)}
        if self.note:
            entry['note'] = self.note
        return entry


@dataclass
class LoopState:
    """ Current program with its evaluation, plus the best program seen so far.

    ``best_q`` is the minimum ``q`` over ``history`` and ``best_program`` is the
    program that reached it.
    """
    iteration: int = 0
    program: Program = None
    metrics: MetricBundle = None
    report: DiffReport = None
    breakdown: ObjectiveBreakdown = None
    best_program: Program = None
    best_q: float = float('inf')
    history: List[HistoryEntry] = field(default_factory=list)
    reports: List[DiffReport] = field(default_factory=list)
    probes: int = 0
    notes: List[str] = field(default_factory=list)
    stop_reason: str = ''

    def record(self, program: Program, breakdown: ObjectiveBreakdown, metrics: MetricBundle,
               report: DiffReport, note: str = '') -> HistoryEntry:
        """ Adds the evaluation of the current iteration and updates the best program. """
        self.program = program
        self.breakdown = breakdown
        self.metrics = metrics
        self.report = report
        entry = HistoryEntry(self.iteration, metrics.cd, metrics.hd, breakdown.q, note)
        self.history.append(entry)
        self.reports.append(report)
        if breakdown.q < self.best_q:
            self.best_q = breakdown.q
            self.best_program = program
        return entry

    def stalled(self, tolerance: float, iterations: int) -> bool:
        """ True when each of the last ``iterations`` steps improved q by less
        than ``tolerance``. """
        if len(self.history) <= iterations:
            return False
        recent = self.history[-(iterations + 1):]
        return all(prev.q - cur.q < tolerance for prev, cur in zip(recent, recent[1:]))

    def history_jsonl(self) -> str:
        return ''.join(json.dumps(entry.to_dict(), sort_keys=True) + '\n'
                       for entry in self.history)
