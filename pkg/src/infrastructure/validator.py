# path: src/infrastructure/validator.py
# description: Exact Partition Validator v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'TilingValidatorPort'. A tile set partitions its region
# iff every tile lies in the region, interiors are pairwise disjoint and
# the measures balance. All three checks run in exact arithmetic and the
# outcome is a ValidationReport; geometric failures never raise.
#
# Overlap detection sorts tiles by their lower extent on one axis and
# sweeps, so only tiles whose extents meet on that axis are compared.

import logging
from typing import Callable, List, Sequence, Tuple, TypeVar

from src.domain.exceptions import InvalidTilingError
from src.domain.ports import TilingValidatorPort, ValidationReport
from src.domain.tiling_model import (
    Cuboid,
    CuboidTiling,
    RectRegion,
    RectTiling,
    Tiling,
    TriTiling,
    as_rect_tiling,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _sweep_pairs(
    items: Sequence[T],
    extent: Callable[[T], Tuple],
    overlap: Callable[[T, T], bool],
) -> List[Tuple[int, int]]:
    """Index pairs whose interiors meet. `extent` gives the (lo, hi) range on the sweep axis."""
    order = sorted(range(len(items)), key=lambda k: extent(items[k])[0])
    active: List[int] = []
    pairs: List[Tuple[int, int]] = []
    for k in order:
        lo = extent(items[k])[0]
        active = [a for a in active if extent(items[a])[1] > lo]
        for a in active:
            if overlap(items[a], items[k]):
                pairs.append((min(a, k), max(a, k)))
        active.append(k)
    return sorted(pairs)


def _open_overlap(lo1, hi1, lo2, hi2) -> bool:
    return lo1 < hi2 and lo2 < hi1


# --- Rectangles -------------------------------------------------------------


def _rect_inside(tile: RectRegion, region: RectRegion) -> bool:
    return region.x0 <= tile.x0 and tile.x1 <= region.x1 and region.y0 <= tile.y0 and tile.y1 <= region.y1


def _rects_overlap(r: RectRegion, s: RectRegion) -> bool:
    return _open_overlap(r.x0, r.x1, s.x0, s.x1) and _open_overlap(r.y0, r.y1, s.y0, s.y1)


def validate_rect_tiling(tiling: RectTiling) -> ValidationReport:
    report = ValidationReport(kind="rect", tile_count=len(tiling.tiles))
    region = tiling.region
    report.outside_tiles = [k for k, tile in enumerate(tiling.tiles) if not _rect_inside(tile, region)]
    report.containment = not report.outside_tiles
    report.overlapping_pairs = _sweep_pairs(tiling.tiles, lambda r: (r.x0, r.x1), _rects_overlap)
    report.disjoint = not report.overlapping_pairs
    report.tile_measure = sum((tile.area for tile in tiling.tiles), start=0 * region.area)
    report.region_measure = region.area
    report.measure_balanced = report.tile_measure == report.region_measure
    _log_failures(report)
    return report


# --- Hypercuboids -----------------------------------------------------------


def _box_inside(tile: Cuboid, region: Cuboid) -> bool:
    return all(rl <= tl and th <= rh for tl, th, rl, rh in zip(tile.lo, tile.hi, region.lo, region.hi))


def _boxes_overlap(c: Cuboid, e: Cuboid) -> bool:
    return all(_open_overlap(c.lo[k], c.hi[k], e.lo[k], e.hi[k]) for k in range(c.dim))


def validate_cuboid_tiling(tiling: CuboidTiling) -> ValidationReport:
    """Same three checks with d-dimensional volumes; d = 2 runs the rectangle checks."""
    dim = tiling.region.dim
    mismatched = [k for k, tile in enumerate(tiling.tiles) if tile.dim != dim]
    if mismatched:
        report = ValidationReport(kind="cuboid", tile_count=len(tiling.tiles))
        report.structural = [f"tile {k} has dimension {tiling.tiles[k].dim}, region has {dim}" for k in mismatched]
        _log_failures(report)
        return report

    if dim == 2:
        planar = as_rect_tiling(tiling)
        report = validate_rect_tiling(planar)
        report.kind = "cuboid"
        return report

    report = ValidationReport(kind="cuboid", tile_count=len(tiling.tiles))
    region = tiling.region
    report.outside_tiles = [k for k, tile in enumerate(tiling.tiles) if not _box_inside(tile, region)]
    report.containment = not report.outside_tiles
    report.overlapping_pairs = _sweep_pairs(tiling.tiles, lambda c: (c.lo[0], c.hi[0]), _boxes_overlap)
    report.disjoint = not report.overlapping_pairs
    report.tile_measure = sum((tile.volume for tile in tiling.tiles), start=0 * region.volume)
    report.region_measure = region.volume
    report.measure_balanced = report.tile_measure == report.region_measure
    _log_failures(report)
    return report


# --- Triangles --------------------------------------------------------------


def validate_tri_tiling(tiling: TriTiling) -> ValidationReport:
    """
    Containment: a triangle lies in a convex region iff its three vertices
    do. Overlap: the strict half-plane systems of both tiles are jointly
    feasible (PsiBounds.interiors_overlap).
    """
    report = ValidationReport(kind="triangle", tile_count=len(tiling.tiles))
    region_bounds = tiling.region.bounds()
    report.outside_tiles = [
        k for k, tile in enumerate(tiling.tiles) if not all(region_bounds.contains(u, v) for u, v in tile.vertices)
    ]
    report.containment = not report.outside_tiles
    bounds = [tile.bounds() for tile in tiling.tiles]
    tiles = list(range(len(tiling.tiles)))

    def v_extent(k: int):
        tile = tiling.tiles[k]
        return (min(tile.b, tile.b + tile.c), max(tile.b, tile.b + tile.c))

    report.overlapping_pairs = _sweep_pairs(tiles, v_extent, lambda i, j: bounds[i].interiors_overlap(bounds[j]))
    report.disjoint = not report.overlapping_pairs
    report.tile_measure = sum((tile.psi_area for tile in tiling.tiles), start=0 * tiling.region.psi_area)
    report.region_measure = tiling.region.psi_area
    report.measure_balanced = report.tile_measure == report.region_measure
    _log_failures(report)
    return report


def _log_failures(report: ValidationReport) -> None:
    if report.passed:
        return
    logger.debug(
        "VALIDATOR_SYS: kind=%s outside=%s overlaps=%s measure=%s/%s structural=%s",
        report.kind,
        report.outside_tiles,
        report.overlapping_pairs,
        report.tile_measure,
        report.region_measure,
        report.structural,
    )


class ExactTilingValidator(TilingValidatorPort):
    """Dispatches on the tiling family."""

    def validate(self, tiling: Tiling) -> ValidationReport:
        if isinstance(tiling, RectTiling):
            return validate_rect_tiling(tiling)
        if isinstance(tiling, CuboidTiling):
            return validate_cuboid_tiling(tiling)
        return validate_tri_tiling(tiling)


def validate(tiling: Tiling) -> ValidationReport:
    return ExactTilingValidator().validate(tiling)


def require_valid(tiling: Tiling) -> ValidationReport:
    """Raise InvalidTilingError unless the tiling passes."""
    report = validate(tiling)
    if not report.passed:
        raise InvalidTilingError(
            "tile set does not partition its region",
            kind=report.kind,
            outside_tiles=report.outside_tiles,
            overlapping_pairs=[list(p) for p in report.overlapping_pairs],
            measure_balanced=report.measure_balanced,
            structural=report.structural,
        )
    return report
