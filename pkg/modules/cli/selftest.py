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

""" Offline self checks of the installation. """

from typing import Callable, List, Tuple

import numpy as np

from modules.anchoring import EdgeMap
from modules.evolution import LoopConfig, run_loop
from modules.metrics import brute_force_distances, chamfer_distance, hausdorff_distance, \
    measure
from modules.program import parse_program, serialize_program, synthetic_corpus
from modules.renderer import render
from modules.vep import project_errors
from utils.logger import GeoLogger

ORACLE_PAIRS = 50
ORACLE_TOLERANCE = 1e-9
ROUND_TRIP_GATE = 10.0


def _random_edges(rng: np.random.Generator, size: int = 96) -> EdgeMap:
    count = int(rng.integers(1, 200))
    points = np.unique(rng.integers(0, size, size=(count, 2)), axis=0)
    return EdgeMap.from_points(points, size, size)


def check_oracle(chamfer: Callable = chamfer_distance,
                 hausdorff: Callable = hausdorff_distance) -> Tuple[bool, str]:
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(ORACLE_PAIRS):
        first, second = _random_edges(rng), _random_edges(rng)
        a_to_b, b_to_a = brute_force_distances(first.points(), second.points())
        expected_cd = 0.5 * (a_to_b.mean() + b_to_a.mean())
        expected_hd = max(a_to_b.max(), b_to_a.max())
        worst = max(worst, abs(chamfer(first, second) - expected_cd),
                    abs(hausdorff(first, second) - expected_hd))
    return worst <= ORACLE_TOLERANCE, '{} pairs, max deviation {:.3g}'.format(ORACLE_PAIRS,
                                                                             worst)


def check_identity() -> Tuple[bool, str]:
    _, program = synthetic_corpus(1, seed=3)[0]
    image = render(program)
    bundle = measure(image, image)
    regions = len(project_errors(image, image).regions)
    ok = bundle.cd == 0 and bundle.hd == 0 and abs(bundle.ssim - 1.0) <= 1e-12 and regions == 0
    return ok, 'cd={:g} hd={:g} ssim={:.12f} regions={}'.format(bundle.cd, bundle.hd,
                                                                 bundle.ssim, regions)


def check_determinism(count: int = 5) -> Tuple[bool, str]:
    mismatches = 0
    for _, program in synthetic_corpus(count, seed=11):
        first = render(program).content_hash()
        again = render(program).content_hash()
        reparsed = render(parse_program(serialize_program(program))).content_hash()
        mismatches += int(first != again or first != reparsed)
    return mismatches == 0, '{} programs, {} hash mismatches'.format(count, mismatches)


def check_round_trip(logger: GeoLogger = None) -> Tuple[bool, str]:
    _, program = synthetic_corpus(1, seed=0)[0]
    observation = render(program)
    best, state = run_loop(observation, cfg=LoopConfig(),
                           logger=logger if logger is not None else GeoLogger())
    bundle = measure(render(best), observation)
    return bundle.cd < ROUND_TRIP_GATE, 'cd={:.3f} hd={:.3f} after {} iterations'.format(
        bundle.cd, bundle.hd, len(state.history))


def selftest(chamfer: Callable = chamfer_distance, hausdorff: Callable = hausdorff_distance,
             logger: GeoLogger = None) -> Tuple[bool, List[str]]:
    """ Runs every check and returns (all passed, one report line per check). """
    checks = [('metric oracle', lambda: check_oracle(chamfer, hausdorff)),
              ('identity fixed point', check_identity),
              ('renderer determinism', check_determinism),
              ('round-trip reconstruction', lambda: check_round_trip(logger))]
    lines = []
    passed = True
    for name, check in checks:
        ok, detail = check()
        passed = passed and ok
        lines.append('{} {}: {}'.format('PASS' if ok else 'FAIL', name, detail))
    return passed, lines
