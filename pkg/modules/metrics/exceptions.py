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


class EmptyEdgeSet(DomainError):
    """ One of the compared edge sets has no pixel (blank rendering or observation). """

    def __init__(self, side: str):
        DomainError.__init__(self, 'edge set "{}" is empty'.format(side), module='metrics')
        self.side = side


class DimensionMismatch(DomainError):
    def __init__(self, first, second):
        DomainError.__init__(self, 'dimension mismatch: {}x{} vs {}x{}'.format(
            first[0], first[1], second[0], second[1]), module='metrics')
        self.first = tuple(first)
        self.second = tuple(second)
