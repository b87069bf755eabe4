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


class RenderFailure(DomainError):
    """ Raised when a primitive cannot be drawn. """

    def __init__(self, primitive_id: str, reason: str):
        DomainError.__init__(self, 'cannot render "{}": {}'.format(primitive_id, reason),
                             module='renderer')
        self.primitive_id = primitive_id
        self.reason = reason


class IoFailure(DomainError):
    def __init__(self, path: str, reason: str):
        DomainError.__init__(self, '{}: {}'.format(path, reason), module='renderer')
        self.path = path


class UnsupportedFormat(DomainError):
    def __init__(self, path: str):
        DomainError.__init__(self, '{}: unsupported image format'.format(path),
                             module='renderer')
        self.path = path
