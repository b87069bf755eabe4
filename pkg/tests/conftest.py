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

""" Shared fixtures: small programs and their renderings. """

import pytest

from modules.program import Circle, Point2D, Primitive, Program, Segment
from modules.renderer import render
from utils.logger import GeoLogger, LogLevel


def segment(prim_id: str, x0: float, y0: float, x1: float, y1: float) -> Primitive:
    return Primitive(prim_id, Segment(Point2D(x0, y0), Point2D(x1, y1)))


def triangle(width: int = 200, height: int = 200) -> Program:
    return Program(width, height, (segment('s1', 40, 160, 160, 160),
                                   segment('s2', 160, 160, 100, 40),
                                   segment('s3', 100, 40, 40, 160)))


@pytest.fixture
def quiet_logger():
    return GeoLogger(console_log_lvl=LogLevel.NONE)


@pytest.fixture
def triangle_program():
    return triangle()


@pytest.fixture
def triangle_image(triangle_program):
    return render(triangle_program)


@pytest.fixture
def circle_program():
    return Program(200, 200, (Primitive('c1', Circle(Point2D(100, 100), 60)),
                              segment('s1', 40, 100, 160, 100)))
