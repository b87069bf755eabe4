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

from utils.exceptions import DomainError, UsageError


class UnknownEntry(DomainError):
    def __init__(self, entry_id: str):
        DomainError.__init__(self, 'no entry "{}" in the manifest'.format(entry_id),
                             module='dataset')
        self.entry_id = entry_id


class InvalidTransition(DomainError):
    """ Only automatically accepted entries can be reviewed, and only once. """

    def __init__(self, entry_id: str, current: str, requested: str):
        DomainError.__init__(self, 'entry "{}" cannot go from {} to {}'.format(
            entry_id, current, requested), module='dataset')
        self.entry_id = entry_id
        self.current = current
        self.requested = requested


class DuplicateEntry(UsageError):
    """ Two input images share a file stem and would map to the same id. """

    def __init__(self, entry_id: str, paths):
        UsageError.__init__(self, 'inputs {} share the id "{}"'.format(
            ', '.join(paths), entry_id), module='dataset')
        self.entry_id = entry_id
        self.paths = tuple(paths)
