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

""" Projects the disagreement between a reconstruction and the observation
into classified regions and a color-coded difference image. """

from typing import List, Tuple

import numpy as np
from scipy.ndimage import binary_dilation, distance_transform_edt, label

from modules.anchoring import EdgeMap, extract_edge_map, thin
from modules.metrics import DimensionMismatch, MetricBundle, measure
from modules.renderer import Raster
from modules.vep.types import DiffRegion, DiffReport, InspectionConfig, MATCHED_COLOR, \
    REGION_COLORS, RegionClass, sort_regions

_EIGHT = np.ones((3, 3), dtype=bool)


def _square(radius: int) -> np.ndarray:
    return np.ones((2 * radius + 1, 2 * radius + 1), dtype=bool)


def _components(mask: np.ndarray) -> List[np.ndarray]:
    """ (x, y) pixels of every 8-connected component, in label order. """
    labels, count = label(mask, structure=_EIGHT)
    if count == 0:
        return []
    rows, cols = np.nonzero(labels)
    ids = labels[rows, cols]
    order = np.argsort(ids, kind='stable')
    rows, cols, ids = rows[order], cols[order], ids[order]
    bounds = np.searchsorted(ids, np.arange(1, count + 2))
    return [np.stack([cols[lo:hi], rows[lo:hi]], axis=1).astype(np.int64)
            for lo, hi in zip(bounds[:-1], bounds[1:])]


def _distance_to(mask: np.ndarray) -> np.ndarray:
    if not mask.any():
        return np.full(mask.shape, np.hypot(*mask.shape))
    return distance_transform_edt(~mask)


def _mean_at(field: np.ndarray, pixels: np.ndarray) -> float:
    return float(field[pixels[:, 1], pixels[:, 0]].mean())


def _fuse_drift(missing: List[DiffRegion], extra: List[DiffRegion],
                cfg: InspectionConfig) -> Tuple[List[DiffRegion], List[DiffRegion],
                                                List[DiffRegion]]:
    """ Pairs a missing and an extra region into one drift region when their
    centroids are close and their sizes similar; closest pairs first. """
    candidates = []
    for i, miss in enumerate(missing):
        for j, hallu in enumerate(extra):
            dist = miss.centroid.distance_to(hallu.centroid)
            larger = max(miss.pixel_count, hallu.pixel_count)
            if dist <= cfg.drift_radius and \
                    abs(miss.pixel_count - hallu.pixel_count) <= cfg.size_ratio * larger:
                candidates.append((dist, i, j))
    used_m, used_h, drift = set(), set(), []
    for _, i, j in sorted(candidates):
        if i in used_m or j in used_h:
            continue
        used_m.add(i)
        used_h.add(j)
        pixels = np.concatenate([missing[i].pixels, extra[j].pixels])
        local = (missing[i].local_cd * missing[i].pixel_count +
                 extra[j].local_cd * extra[j].pixel_count) / len(pixels)
        drift.append(DiffRegion.from_pixels(RegionClass.Drift, pixels, local))
    return ([r for i, r in enumerate(missing) if i not in used_m],
            [r for j, r in enumerate(extra) if j not in used_h], drift)


def local_widths(mask: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ Unit-width skeleton of the ink and the stroke width measured at each
    of its pixels. """
    skeleton = thin(mask)
    widths = 2.0 * distance_transform_edt(mask) - 1.0
    return skeleton, widths


def width_mismatch(rec_mask: np.ndarray, obs_mask: np.ndarray,
                   cfg: InspectionConfig) -> Tuple[np.ndarray, float]:
    """ Reconstruction skeleton pixels whose stroke width differs from the
    matched observation stroke by more than ``width_delta``, and the largest
    width involved. """
    mismatch = np.zeros(rec_mask.shape, dtype=bool)
    rec_skel, rec_widths = local_widths(rec_mask)
    obs_skel, obs_widths = local_widths(obs_mask)
    if not rec_skel.any() or not obs_skel.any():
        return mismatch, 0.0
    distance, (near_rows, near_cols) = distance_transform_edt(~obs_skel, return_indices=True)
    rows, cols = np.nonzero(rec_skel & (distance <= cfg.tau))
    if len(rows) == 0:
        return mismatch, 0.0
    theirs = obs_widths[near_rows[rows, cols], near_cols[rows, cols]]
    ours = rec_widths[rows, cols]
    bad = np.abs(ours - theirs) > cfg.width_delta
    mismatch[rows[bad], cols[bad]] = True
    widest = float(max(ours[bad].max(), theirs[bad].max())) if bad.any() else 0.0
    return mismatch, widest


def _style_regions(rec_edges: EdgeMap, obs_edges: EdgeMap, cfg: InspectionConfig,
                   loose: List[DiffRegion]) -> Tuple[List[DiffRegion], List[DiffRegion]]:
    """ Style mismatch regions, and the remaining loose regions after those
    lying mostly on a mismatched stroke were reclassified. """
    mismatch, widest = width_mismatch(rec_edges.mask, obs_edges.mask, cfg)
    components = [c for c in _components(mismatch) if len(c) >= cfg.min_style_pixels]
    if not components:
        return [], loose
    kept = np.zeros(mismatch.shape, dtype=bool)
    for comp in components:
        kept[comp[:, 1], comp[:, 0]] = True
    styles = [DiffRegion.from_pixels(RegionClass.StyleMismatch, comp, 0.0)
              for comp in components]
    zone = binary_dilation(kept, structure=_square(cfg.tau + int(np.ceil(widest / 2.0))))
    remaining = []
    for region in loose:
        inside = zone[region.pixels[:, 1], region.pixels[:, 0]].mean()
        if inside >= 0.5:
            styles.append(DiffRegion.from_pixels(RegionClass.StyleMismatch, region.pixels,
                                                 region.local_cd))
        else:
            remaining.append(region)
    return styles, remaining


def diff_image(rec_edges: EdgeMap, obs_edges: EdgeMap, regions: List[DiffRegion]) -> Raster:
    """ Matched edges gray, then every region in its class color. """
    canvas = np.full((obs_edges.height, obs_edges.width, 3), 255, dtype=np.uint8)
    canvas[rec_edges.mask | obs_edges.mask] = MATCHED_COLOR
    for region in sorted(regions, key=lambda r: r.pixel_count, reverse=True):
        canvas[region.pixels[:, 1], region.pixels[:, 0]] = REGION_COLORS[region.classification]
    return Raster(canvas)


def project_errors(rec: Raster, obs: Raster, metrics: MetricBundle = None,
                   cfg: InspectionConfig = InspectionConfig(), iteration: int = 0) -> DiffReport:
    """ Classified difference map between a reconstruction and the observation.

    Observation edges farther than ``tau`` (per axis) from every reconstructed
    edge are missing, reconstructed edges farther than ``tau`` from the
    observation are extra. Their 8-connected components become regions; a
    close missing/extra pair of similar size fuses into a drift region, and
    regions on strokes drawn with the wrong width are style mismatches.

    Args:
        rec (Raster): the rendering of the current program
        obs (Raster): the observation
        metrics (MetricBundle): metrics of the pair; computed when absent
        cfg (InspectionConfig): thresholds
        iteration (int): loop iteration the report belongs to

    Raises:
        DimensionMismatch: the rasters differ in size
    """
    if rec.shape != obs.shape:
        raise DimensionMismatch(rec.shape, obs.shape)
    rec_edges = extract_edge_map(rec, cfg.edge_threshold)
    obs_edges = extract_edge_map(obs, cfg.edge_threshold)
    if metrics is None:
        metrics = measure(rec, obs, obs_edges)
    window = _square(cfg.tau)
    miss = obs_edges.mask & ~binary_dilation(rec_edges.mask, structure=window)
    hallu = rec_edges.mask & ~binary_dilation(obs_edges.mask, structure=window)
    to_rec = _distance_to(rec_edges.mask)
    to_obs = _distance_to(obs_edges.mask)
    missing = [DiffRegion.from_pixels(RegionClass.Missing, c, _mean_at(to_rec, c))
               for c in _components(miss)]
    extra = [DiffRegion.from_pixels(RegionClass.Hallucination, c, _mean_at(to_obs, c))
             for c in _components(hallu)]
    missing, extra, drift = _fuse_drift(missing, extra, cfg)
    styles, loose = _style_regions(rec_edges, obs_edges, cfg, missing + extra)
    regions = sort_regions(drift + styles + loose)
    return DiffReport(tuple(regions), metrics, iteration, diff_image(rec_edges, obs_edges,
                                                                     regions))
