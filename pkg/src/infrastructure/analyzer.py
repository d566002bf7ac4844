# path: src/infrastructure/analyzer.py
# description: Coordinate Analysis Layer v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'CoordinateAnalyzerPort'. Extracts the vertex coordinate
# sets that feed the Dirichlet scan and checks the counting lemmas on them:
#   - rectangles: |X| + |Y| <= n + 3,
#   - boxes: interior facets lie on at most n - 1 hyperplanes and the best
#     axis pair carries at most 2(n-1)/d + 4 distinct coordinates,
#   - triangles: interior edges lie on at most n - 1 lattice lines and one
#     of the three rotations leaves at most (2n-2)/3 coordinates.
# Bounds are exact rationals; reports carry a pass flag instead of raising.

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Tuple, Union

from src.domain.exact_numeric import Rat
from src.domain.exceptions import PreconditionViolation
from src.domain.ports import AxisPairReport, CoordinateAnalyzerPort, CoordReport, CoverReport, RotationReport
from src.domain.tiling_model import (
    ANTI_DIAGONAL,
    HORIZONTAL,
    PSI_VERTICAL,
    UNIT_TRIANGLE,
    CuboidTiling,
    Hyperplane,
    Line,
    ParallelogramRegion,
    RectTiling,
    Tiling,
    TriTiling,
    as_cuboid_tiling,
    normalize_triangle,
    rotate_tri_120,
)

logger = logging.getLogger(__name__)

_EXCLUDED = (Fraction(0), Fraction(1))


def _boxes(tiling: Union[RectTiling, CuboidTiling]) -> CuboidTiling:
    return as_cuboid_tiling(tiling) if isinstance(tiling, RectTiling) else tiling


def axis_coordinates(tiling: CuboidTiling, axis: int) -> Tuple[Rat, ...]:
    """Distinct vertex coordinates of all tiles along one axis."""
    values = set()
    for tile in tiling.tiles:
        values.add(tile.lo[axis])
        values.add(tile.hi[axis])
    return tuple(sorted(values))


# --- Rectangles -------------------------------------------------------------


def trivial_coordinate_bound(n: int) -> int:
    """Coarse estimate of the coordinate count: n + 1 values per axis."""
    return 2 * n + 2


def rect_coord_sets(tiling: RectTiling) -> CoordReport:
    n = len(tiling.tiles)
    xs = tuple(sorted({v for t in tiling.tiles for v in (t.x0, t.x1)}))
    ys = tuple(sorted({v for t in tiling.tiles for v in (t.y0, t.y1)}))
    return CoordReport(
        kind="rect",
        tile_count=n,
        coordinates=(xs, ys),
        bound=Fraction(n + 3),
        reference_bound=Fraction(trivial_coordinate_bound(n)),
    )


# --- Hypercuboids -----------------------------------------------------------


def _interior_facets(tiling: CuboidTiling) -> List[Tuple[int, int, Rat]]:
    """(tile index, axis, value) for every facet off the region boundary."""
    region = tiling.region
    facets = []
    for k, tile in enumerate(tiling.tiles):
        for axis in range(tiling.dim):
            for value in (tile.lo[axis], tile.hi[axis]):
                if value not in (region.lo[axis], region.hi[axis]):
                    facets.append((k, axis, value))
    return facets


def cuboid_hyperplane_cover(tiling: Union[CuboidTiling, RectTiling]) -> CoverReport:
    boxes = _boxes(tiling)
    members = tuple(sorted({(axis, value) for _, axis, value in _interior_facets(boxes)}))
    return CoverReport(kind="cuboid", tile_count=len(boxes.tiles), members=members, bound=Fraction(len(boxes.tiles) - 1))


def uncovered_facets(tiling: Union[CuboidTiling, RectTiling], planes: Iterable[Hyperplane]) -> List[Tuple[int, int, Rat]]:
    """Interior facets that lie on none of the given hyperplanes."""
    cover = set(planes)
    return [(k, axis, value) for k, axis, value in _interior_facets(_boxes(tiling)) if (axis, value) not in cover]


def cuboid_best_axis_pair(tiling: Union[CuboidTiling, RectTiling]) -> AxisPairReport:
    """Axis pair with the fewest distinct coordinates; ties go to the smallest (i, j)."""
    boxes = _boxes(tiling)
    n, d = len(boxes.tiles), boxes.dim
    sizes = [len(axis_coordinates(boxes, axis)) for axis in range(d)]
    i, j = min(combinations(range(d), 2), key=lambda pair: (sizes[pair[0]] + sizes[pair[1]], pair))
    return AxisPairReport(i=i, j=j, count=sizes[i] + sizes[j], bound=Fraction(2 * (n - 1), d) + 4)


# --- Triangles --------------------------------------------------------------


def _tri_region_lines(tiling: TriTiling) -> Tuple[Line, ...]:
    if isinstance(tiling.region, ParallelogramRegion):
        raise PreconditionViolation(
            "line cover needs a triangle or trapezoid region", key="error_region_kind", kind=tiling.region.kind
        )
    return tiling.region.boundary_lines()


def _interior_edges(tiling: TriTiling) -> List[Tuple[int, Line]]:
    boundary = set(_tri_region_lines(tiling))
    return [(k, line) for k, tile in enumerate(tiling.tiles) for line in tile.edge_lines if line not in boundary]


def _line_key(line: Line):
    order = {PSI_VERTICAL: 0, HORIZONTAL: 1, ANTI_DIAGONAL: 2}
    return (order[line[0]], line[1])


def tri_line_cover(tiling: TriTiling) -> CoverReport:
    members = tuple(sorted({line for _, line in _interior_edges(tiling)}, key=_line_key))
    return CoverReport(kind="triangle", tile_count=len(tiling.tiles), members=members, bound=Fraction(len(tiling.tiles) - 1))


def uncovered_edges(tiling: TriTiling, lines: Iterable[Line]) -> List[Tuple[int, Line]]:
    cover = set(lines)
    return [(k, line) for k, line in _interior_edges(tiling) if line not in cover]


def psi_coordinate_set(tiling: TriTiling) -> Tuple[Rat, ...]:
    """Distinct first and second Psi-coordinates of all tile vertices, without 0 and 1."""
    values = set()
    for tile in tiling.tiles:
        for u, v in tile.vertices:
            values.add(u)
            values.add(v)
    return tuple(sorted(values.difference(_EXCLUDED)))


def rotated(tiling: TriTiling, times: int) -> TriTiling:
    for _ in range(times % 3):
        tiling = rotate_tri_120(tiling)
    return tiling


def tri_best_rotation(tiling: TriTiling) -> RotationReport:
    if tiling.region != UNIT_TRIANGLE:
        raise PreconditionViolation("rotation analysis needs the region T(0,0,1)", key="error_not_normalized")
    candidates = [psi_coordinate_set(rotated(tiling, k)) for k in range(3)]
    best = min(range(3), key=lambda k: (len(candidates[k]), k))
    n = len(tiling.tiles)
    return RotationReport(
        rotation=best,
        coordinates=candidates[best],
        sizes=tuple(len(c) for c in candidates),
        bound=Fraction(2 * n - 2, 3),
    )


class CoordinateAnalyzer(CoordinateAnalyzerPort):
    """Runs every report that applies to the tiling family."""

    def analyze(self, tiling: Tiling) -> Dict[str, Any]:
        reports: Dict[str, Any] = {}
        if isinstance(tiling, RectTiling):
            reports["coordinates"] = rect_coord_sets(tiling)
            reports["cover"] = cuboid_hyperplane_cover(tiling)
            reports["axis_pair"] = cuboid_best_axis_pair(tiling)
        elif isinstance(tiling, CuboidTiling):
            reports["cover"] = cuboid_hyperplane_cover(tiling)
            reports["axis_pair"] = cuboid_best_axis_pair(tiling)
        else:
            if not isinstance(tiling.region, ParallelogramRegion):
                reports["cover"] = tri_line_cover(tiling)
            if tiling.region.kind == "triangle":
                normalized, _, _ = normalize_triangle(tiling)
                reports["rotation"] = tri_best_rotation(normalized)
        failing = [name for name, report in reports.items() if not report.passed]
        if failing:
            logger.warning("ANALYZER_SYS: lemma bound exceeded for %s", failing)
        return reports


def analyze(tiling: Tiling) -> Dict[str, Any]:
    return CoordinateAnalyzer().analyze(tiling)
