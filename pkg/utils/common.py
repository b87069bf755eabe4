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

""" Seeding of the random generators used by the synthetic corpus. """

import random

import numpy as np

DEFAULT_SEED = 0

_active_seed = None


def init_random(seed: int = None) -> int:
    """ Seeds the ``random`` and numpy global generators and returns the seed in use.

    Reconstruction never draws random numbers; only corpus generation and
    tests do. Without an explicit seed the previously set one (or
    ``DEFAULT_SEED``) is kept, so repeated runs stay reproducible.
    """
    global _active_seed  # pylint: disable=global-statement
    if seed is None:
        seed = DEFAULT_SEED if _active_seed is None else _active_seed
    if seed < 0:
        raise ValueError('seed must be non-negative, got {}'.format(seed))
    _active_seed = seed
    random.seed(seed)
    np.random.seed(seed % 2 ** 32)
    return seed


def corpus_rng(seed: int = None) -> np.random.Generator:
    """ A fresh generator for corpus sampling, seeded through ``init_random``. """
    return np.random.default_rng(init_random(seed))
