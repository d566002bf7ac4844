from fractions import Fraction as F

import pytest

from src.domain.exceptions import InvalidTilingError
from src.domain.tiling_model import (
    UNIT_TRIANGLE,
    Cuboid,
    CuboidTiling,
    RectRegion,
    RectTile,
    RectTiling,
    TriTile,
    TriTiling,
    as_cuboid_tiling,
    scale_translate,
)
from src.infrastructure.validator import ExactTilingValidator, require_valid, validate


@pytest.mark.parametrize(
    "name", ["unit_square", "fibonacci_2x3", "ratio_cut", "half_cubes", "four_split", "half_trapezoid", "wide_parallelogram"]
)
def test_fixtures_are_tilings(request, name):
    report = validate(request.getfixturevalue(name))
    assert report.passed, report


def test_overlap_is_reported_by_index():
    tiling = RectTiling(
        RectRegion(0, 2, 0, 1),
        (RectTile(0, 1, 0, 1), RectTile(F(1, 2), F(3, 2), 0, 1), RectTile(1, 2, 0, 1)),
    )
    report = validate(tiling)
    assert not report.passed
    assert report.overlapping_pairs == [(0, 1), (1, 2)]
    assert report.containment


def test_touching_edges_are_not_overlaps(fibonacci_2x3):
    assert validate(fibonacci_2x3).overlapping_pairs == []


def test_gap_breaks_measure_balance():
    tiling = RectTiling(RectRegion(0, 1, 0, 1), (RectTile(0, F(1, 2), 0, 1),))
    report = validate(tiling)
    assert report.containment and report.disjoint
    assert not report.measure_balanced
    assert (report.tile_measure, report.region_measure) == (F(1, 2), 1)


def test_tile_outside_region():
    tiling = RectTiling(RectRegion(0, 1, 0, 1), (RectTile(0, 1, 0, 1), RectTile(1, 2, 0, 1)))
    report = validate(tiling)
    assert report.outside_tiles == [1]
    assert not report.passed


def test_cuboid_overlap_needs_every_axis(half_cubes):
    tiles = list(half_cubes.tiles)
    tiles[1] = Cuboid((0, 0, F(1, 4)), (F(1, 2), F(1, 2), F(3, 4)))
    report = validate(CuboidTiling(half_cubes.region, tuple(tiles)))
    assert report.overlapping_pairs == [(0, 1)]


def test_cuboid_dimension_mismatch_is_structural():
    tiling = CuboidTiling(Cuboid((0, 0, 0), (1, 1, 1)), (Cuboid((0, 0), (1, 1)),))
    report = validate(tiling)
    assert report.structural
    assert not report.passed


def test_planar_boxes_report_as_cuboid(ratio_cut):
    report = validate(as_cuboid_tiling(ratio_cut))
    assert report.kind == "cuboid"
    assert report.passed


def test_triangles_sharing_an_edge_do_not_overlap(four_split):
    assert validate(four_split).overlapping_pairs == []


def test_down_triangle_overlapping_corner():
    tiling = TriTiling(
        UNIT_TRIANGLE,
        (TriTile(0, 0, F(1, 2)), TriTile(F(1, 2), 0, F(1, 2)), TriTile(0, F(1, 2), F(1, 2)), TriTile(F(1, 2), F(1, 2), -F(1, 2)), TriTile(F(1, 4), F(1, 4), -F(1, 4))),
    )
    report = validate(tiling)
    assert (0, 4) in report.overlapping_pairs
    assert not report.measure_balanced


def test_triangle_outside_region():
    tiling = TriTiling(UNIT_TRIANGLE, (TriTile(0, 0, 1), TriTile(1, 0, 1)))
    assert validate(tiling).outside_tiles == [1]


def test_scaled_tilings_stay_valid(fibonacci_2x3, wide_parallelogram):
    assert validate(scale_translate(fibonacci_2x3, F(2, 7), (F(1, 3), -5))).passed
    assert validate(scale_translate(wide_parallelogram, 3, (1, 1))).passed


def test_require_valid_raises_with_details():
    tiling = RectTiling(RectRegion(0, 1, 0, 1), (RectTile(0, F(1, 2), 0, 1),))
    with pytest.raises(InvalidTilingError) as exc:
        require_valid(tiling)
    assert exc.value.key == "error_invalid_tiling"
    assert exc.value.details["measure_balanced"] is False


def test_port_dispatch(four_split, half_cubes):
    validator = ExactTilingValidator()
    assert validator.validate(four_split).kind == "triangle"
    assert validator.validate(half_cubes).kind == "cuboid"
