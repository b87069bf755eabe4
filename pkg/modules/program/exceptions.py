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

from utils.exceptions import DomainError


class ProgramSyntaxError(DomainError):
    """ Raised when program text does not follow the grammar. """

    def __init__(self, line: int, column: int, message: str):
        DomainError.__init__(self, 'line {}, column {}: {}'.format(line, column, message),
                             module='geom_program')
        self.line = line
        self.column = column
        self.reason = message


class DuplicateId(DomainError):
    def __init__(self, prim_id: str, line: int):
        DomainError.__init__(self, 'line {}: duplicate id "{}"'.format(line, prim_id),
                             module='geom_program')
        self.id = prim_id
        self.line = line


class DanglingReference(DomainError):
    def __init__(self, name: str, line: int):
        DomainError.__init__(self, 'line {}: undefined point "{}"'.format(line, name),
                             module='geom_program')
        self.id = name
        self.line = line
