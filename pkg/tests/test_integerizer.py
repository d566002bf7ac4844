from fractions import Fraction as F

import pytest

from src.domain.exact_numeric import PowerBound, round_nearest
from src.domain.exceptions import PreconditionViolation
from src.domain.tiling_model import (
    Cuboid,
    CuboidTiling,
    ParallelogramRegion,
    RectRegion,
    RectTile,
    RectTiling,
    TrapezoidRegion,
    TriTile,
    TriTiling,
    scale_translate,
)
from src.infrastructure.generators import (
    dehn_sharpness_tiling,
    dyadic_cube_tiling,
    dyadic_square_tiling,
    dyadic_triangle_tiling,
    fibonacci_tiling,
)
from src.infrastructure.integerizer import (
    DirichletScalingEngine,
    almost_integer_snap,
    almost_integer_snap_triangle,
    check_balanced_lines_square,
    check_balanced_lines_triangle,
    count_half_shifted,
    count_half_shifted_diag,
    cuboid_cross_section,
    dehn_aspect_ratio,
    integerize_hypercube_tiling,
    integerize_hypercuboid_tiling,
    integerize_rect_tiling,
    integerize_square_tiling,
    integerize_trapezoid_or_parallelogram,
    integerize_triangle_tiling,
    rfunction_flow_check,
    section_anchors,
    tri_rfunction_flow_check,
    verify_by_sections,
)
from src.infrastructure.validator import validate

H = F(1, 2)


@pytest.fixture
def third_cut_boxes():
    return CuboidTiling(
        Cuboid((0, 0, 0), (1, 1, 1)),
        (
            Cuboid((0, 0, 0), (F(1, 3), 1, 1), shape=(1, 3, 3)),
            Cuboid((F(1, 3), 0, 0), (1, 1, 1), shape=(2, 3, 3)),
        ),
    )


class TestHalfShiftedLines:
    @pytest.mark.parametrize(
        "lo, hi, expected",
        [(0, 3, 3), (F(1, 8), F(9, 8), 1), (F(-7, 8), F(7, 8), 2), (F(1, 3), F(2, 3), 1), (F(1, 8), F(3, 8), 0)],
    )
    def test_count(self, lo, hi, expected):
        assert count_half_shifted(lo, hi) == expected

    def test_half_integer_endpoint(self):
        with pytest.raises(PreconditionViolation) as exc:
            count_half_shifted(0, F(3, 2))
        assert exc.value.key == "error_half_integer_endpoint"

    def test_empty_interval(self):
        with pytest.raises(PreconditionViolation) as exc:
            count_half_shifted(1, 1)
        assert exc.value.key == "error_empty_interval"

    def test_diagonal_count(self):
        lines = count_half_shifted_diag(TriTile(F(1, 8), F(-1, 8), F(7, 8)))
        assert (lines.diag, lines.h) == (1, 1)
        assert lines.balanced

    def test_balanced_square(self):
        assert check_balanced_lines_square(RectTile(F(1, 8), F(17, 8), F(-1, 8), F(15, 8)))

    def test_balanced_square_needs_quarter_distance(self):
        with pytest.raises(PreconditionViolation) as exc:
            check_balanced_lines_square(RectTile(F(1, 4), F(5, 4), 0, 1))
        assert exc.value.key == "error_quarter_distance"

    def test_balanced_triangle(self):
        assert check_balanced_lines_triangle(TriTile(F(1, 8), F(-1, 8), 1))
        assert check_balanced_lines_triangle(TriTile(F(9, 8), 1, -1))


def test_aspect_ratio_from_line_counts(fibonacci_2x3):
    assert dehn_aspect_ratio(fibonacci_2x3) == F(3, 2)


class TestFlowHarness:
    def test_rounding_on_a_shifted_tiling(self, fibonacci_2x3):
        shifted = scale_translate(fibonacci_2x3, 1, (F(1, 8), 0))
        verdict = rfunction_flow_check(shifted, round_nearest)
        assert verdict.hypotheses_hold
        assert not verdict.conclusion_failures
        assert not verdict.counterexample

    def test_hypothesis_failures_skip_the_conclusion(self, fibonacci_2x3):
        r = {F(0): F(0), F(1): F(3, 2), F(2): F(2), F(3): F(3)}
        verdict = rfunction_flow_check(fibonacci_2x3, r)
        assert verdict.hypothesis_failures == [0, 1]
        assert verdict.conclusion_failures == []

    def test_region_must_be_fixed(self, fibonacci_2x3):
        with pytest.raises(PreconditionViolation) as exc:
            rfunction_flow_check(fibonacci_2x3, lambda x: x + 1)
        assert exc.value.key == "error_region_not_fixed"

    def test_triangle_rounding(self, four_split):
        shifted = scale_translate(four_split, 2, (F(1, 8), 0))
        verdict = tri_rfunction_flow_check(shifted, round_nearest)
        assert verdict.hypotheses_hold and not verdict.counterexample


class TestAlmostIntegerSnap:
    def test_shifted_squares_snap_to_their_sides(self, fibonacci_2x3):
        assert almost_integer_snap(scale_translate(fibonacci_2x3, 1, (F(1, 8), 0))) == [1, 1, 2]

    def test_quarter_distance_is_rejected(self):
        with pytest.raises(PreconditionViolation) as exc:
            almost_integer_snap(scale_translate(dehn_sharpness_tiling(), 1))
        assert exc.value.key == "error_quarter_distance"

    def test_region_needs_integral_sides(self, fibonacci_2x3):
        with pytest.raises(PreconditionViolation) as exc:
            almost_integer_snap(scale_translate(fibonacci_2x3, 1, (F(1, 8), F(1, 8))))
        assert exc.value.key == "error_region_not_integral"

    def test_triangles(self, four_split):
        assert almost_integer_snap_triangle(scale_translate(four_split, 2, (F(1, 8), 0))) == [1, 1, 1, 1]


class TestSquarePipeline:
    def test_fibonacci(self, fibonacci_2x3):
        cert = integerize_square_tiling(fibonacci_2x3)
        assert cert.q == 3
        assert cert.factor == 1
        assert cert.integer_sides == [1, 1, 2]
        assert cert.coordinate_set == (F(1, 3), F(2, 3))
        assert cert.bound == PowerBound(4, F(3))

    def test_fibonacci_five(self):
        cert = integerize_square_tiling(fibonacci_tiling(5))
        assert cert.coordinate_set == (F(1, 4), F(3, 8), H, F(5, 8))
        assert cert.q == 8
        assert cert.factor == 1

    def test_dyadic(self):
        cert = integerize_square_tiling(dyadic_square_tiling(2))
        assert (cert.q, len(cert.scaled.tiles)) == (4, 7)
        assert sorted(cert.integer_sides) == [1, 1, 1, 1, 2, 2, 2]

    def test_sharpness_layout(self):
        cert = integerize_square_tiling(dehn_sharpness_tiling())
        assert cert.q == 8
        assert cert.factor == 4
        assert sorted(set(cert.integer_sides)) == [1, 2, 3]

    def test_unit_square(self, unit_square):
        cert = integerize_square_tiling(unit_square)
        assert (cert.q, cert.integer_sides) == (1, [1])

    def test_scaled_tiling_starts_at_origin(self, fibonacci_2x3):
        cert = integerize_square_tiling(scale_translate(fibonacci_2x3, F(2, 9), (5, F(-1, 3))))
        assert cert.scaled.region == RectRegion(0, 2, 0, 3)

    def test_needs_squares(self, ratio_cut):
        with pytest.raises(PreconditionViolation) as exc:
            integerize_square_tiling(ratio_cut)
        assert exc.value.key == "error_not_square"


class TestRatioPipeline:
    def test_third_cut(self, ratio_cut):
        cert = integerize_rect_tiling(ratio_cut)
        assert cert.q == 3
        assert cert.integer_sides == [[1, 3], [2, 3]]
        assert cert.bound.exact_value() == 576
        assert cert.dirichlet_bound == 144

    def test_unreduced_ratio_gives_the_same_certificate(self, ratio_cut):
        tiling = RectTiling(
            RectRegion(0, 1, 0, 1),
            (RectTile(0, F(1, 3), 0, 1, ratio=(6, 2)), RectTile(F(1, 3), 1, 0, 1, ratio=(9, 6))),
        )
        assert tiling == ratio_cut
        cert = integerize_rect_tiling(tiling)
        assert (cert.q, cert.integer_sides) == (3, [[1, 3], [2, 3]])

    def test_missing_ratio(self, ratio_cut):
        tiling = RectTiling(ratio_cut.region, (ratio_cut.tiles[0], RectTile(F(1, 3), 1, 0, 1)))
        with pytest.raises(PreconditionViolation) as exc:
            integerize_rect_tiling(tiling)
        assert exc.value.key == "error_missing_ratio"


class TestCrossSections:
    def test_section_of_half_cubes(self, half_cubes):
        section = cuboid_cross_section(half_cubes, (0, 1), [F(1, 4)])
        assert len(section.tiles) == 4
        assert validate(section).passed

    def test_anchor_on_vertex(self, half_cubes):
        with pytest.raises(PreconditionViolation) as exc:
            cuboid_cross_section(half_cubes, (0, 1), [H])
        assert exc.value.key == "error_anchor_on_vertex"

    def test_anchor_outside(self, half_cubes):
        with pytest.raises(PreconditionViolation) as exc:
            cuboid_cross_section(half_cubes, (0, 2), [2])
        assert exc.value.key == "error_anchor_outside"

    def test_axes_must_differ(self, half_cubes):
        with pytest.raises(PreconditionViolation) as exc:
            cuboid_cross_section(half_cubes, (1, 1), [F(1, 4)])
        assert exc.value.key == "error_section_axes"

    def test_anchors_and_sections(self, half_cubes):
        scaled = scale_translate(half_cubes, 2)
        assert section_anchors(scaled, (0, 1)) == [(H,), (F(3, 2),)]
        assert verify_by_sections(scaled, (0, 1)) == 2


class TestHypercubePipeline:
    def test_half_cubes(self, half_cubes):
        cert = integerize_hypercube_tiling(half_cubes)
        assert (cert.q, cert.axes) == (2, (0, 1))
        assert cert.integer_sides == [1] * 8
        assert "sections_verified=2" in cert.notes

    def test_dyadic_cube(self):
        cert = integerize_hypercube_tiling(dyadic_cube_tiling(3, 2))
        assert (cert.q, len(cert.scaled.tiles)) == (4, 15)
        assert cert.bound == PowerBound(4, F(31, 3))
        assert "sections_verified=3" in cert.notes

    def test_longest_side_strategy(self, half_cubes):
        cert = integerize_hypercube_tiling(half_cubes, strategy="longest")
        assert cert.bound == PowerBound(4, F(8))
        assert cert.q == 2

    def test_unknown_strategy(self, half_cubes):
        with pytest.raises(PreconditionViolation) as exc:
            integerize_hypercube_tiling(half_cubes, strategy="widest")
        assert exc.value.key == "error_strategy"


@pytest.fixture
def stacked_squares():
    return CuboidTiling(Cuboid((0, 0), (1, 2)), (Cuboid((0, 0), (1, 1)), Cuboid((0, 1), (1, 2))))


def _unit_shapes(tiling):
    shape = (1,) * tiling.dim
    return CuboidTiling(tiling.region, tuple(Cuboid(t.lo, t.hi, shape=shape) for t in tiling.tiles))


class TestUnitShapeConsistency:
    def test_pair_is_oriented_along_the_longer_side(self, stacked_squares):
        cert = integerize_hypercube_tiling(stacked_squares)
        assert (cert.axes, cert.q, cert.factor) == ((1, 0), 2, 1)
        assert cert.coordinate_set == (H,)

    @pytest.mark.parametrize("strategy", ["best_pair", "longest"])
    def test_hypercuboid_matches_hypercube(self, stacked_squares, strategy):
        cube = integerize_hypercube_tiling(stacked_squares, strategy=strategy)
        boxes = integerize_hypercuboid_tiling(_unit_shapes(stacked_squares))
        assert (boxes.q, boxes.factor, boxes.axes) == (cube.q, cube.factor, cube.axes)
        assert boxes.coordinate_set == cube.coordinate_set
        assert [t.sides for t in boxes.scaled.tiles] == [t.sides for t in cube.scaled.tiles]

    def test_half_cubes(self, half_cubes):
        cube = integerize_hypercube_tiling(half_cubes, strategy="longest")
        boxes = integerize_hypercuboid_tiling(_unit_shapes(half_cubes))
        assert (boxes.q, boxes.axes) == (cube.q, cube.axes) == (2, (0, 1))


def test_hypercuboid_third_cut(third_cut_boxes):
    cert = integerize_hypercuboid_tiling(third_cut_boxes)
    assert (cert.axes, cert.q) == ((0, 1), 3)
    assert cert.integer_sides == [[1, 3, 3], [2, 3, 3]]
    assert cert.bound.exact_value() == 576


class TestTrianglePipelines:
    def test_four_split(self, four_split):
        cert = integerize_triangle_tiling(four_split)
        assert (cert.q, cert.factor, cert.rotation) == (2, 2, 0)
        assert cert.coordinate_set == (H,)
        assert cert.integer_sides == [1, 1, 1, 1]

    def test_dyadic_triangle(self):
        cert = integerize_triangle_tiling(dyadic_triangle_tiling(2))
        assert cert.q == 4
        assert sorted(cert.integer_sides) == [1, 1, 1, 1, 2, 2, 2]
        assert cert.bound == PowerBound(4, F(4))

    def test_placed_triangle(self, four_split):
        cert = integerize_triangle_tiling(scale_translate(four_split, F(3, 5), (F(1, 7), 2)))
        assert cert.q == 2
        assert cert.factor == F(10, 3)

    def test_trapezoid(self, half_trapezoid):
        cert = integerize_trapezoid_or_parallelogram(half_trapezoid)
        assert (cert.pipeline, cert.q, cert.factor) == ("trapezoid", 2, 2)
        assert len(cert.scaled.tiles) == 3
        assert cert.scaled.region == TrapezoidRegion(0, 0, 2, 1, 1)
        assert cert.notes == ["augmented_tiles=1"]

    def test_parallelogram(self, wide_parallelogram):
        cert = integerize_trapezoid_or_parallelogram(wide_parallelogram)
        assert (cert.pipeline, cert.q, cert.factor) == ("parallelogram", 3, 1)
        assert cert.integer_sides == [1, 1, 1, 1]
        assert cert.bound == PowerBound(4, F(10, 3))

    def test_rhombus(self):
        rhombus = TriTiling(ParallelogramRegion(0, 0, H, H), (TriTile(0, 0, H), TriTile(H, H, -H)))
        cert = integerize_trapezoid_or_parallelogram(rhombus)
        assert (cert.q, cert.factor) == (2, 2)
        assert cert.scaled.region == ParallelogramRegion(0, 0, 1, 1)

    def test_triangle_region_goes_elsewhere(self, four_split):
        with pytest.raises(PreconditionViolation) as exc:
            integerize_trapezoid_or_parallelogram(four_split)
        assert exc.value.key == "error_region_kind"


class TestDispatch:
    def test_families(self, fibonacci_2x3, ratio_cut, half_cubes, third_cut_boxes, four_split, wide_parallelogram):
        engine = DirichletScalingEngine()
        assert engine.integerize(fibonacci_2x3).pipeline == "square"
        assert engine.integerize(ratio_cut).pipeline == "ratio"
        assert engine.integerize(half_cubes).pipeline == "hypercube"
        assert engine.integerize(third_cut_boxes).pipeline == "hypercuboid"
        assert engine.integerize(four_split).pipeline == "triangle"
        assert engine.integerize(wide_parallelogram).pipeline == "parallelogram"

    def test_squares_with_ratios_run_both(self):
        tiling = RectTiling(
            RectRegion(0, 2, 0, 3),
            (RectTile(0, 1, 2, 3, ratio=(1, 1)), RectTile(1, 2, 2, 3, ratio=(1, 1)), RectTile(0, 2, 0, 2, ratio=(1, 1))),
        )
        cert = DirichletScalingEngine().integerize(tiling)
        assert cert.pipeline == "ratio"
        assert "square_pipeline_q=3" in cert.notes

    def test_rectangles_need_ratios(self):
        tiling = RectTiling(RectRegion(0, 1, 0, 1), (RectTile(0, H, 0, 1), RectTile(H, 1, 0, 1)))
        with pytest.raises(PreconditionViolation) as exc:
            DirichletScalingEngine().integerize(tiling)
        assert exc.value.key == "error_missing_ratio"

    def test_boxes_need_shapes(self):
        tiling = CuboidTiling(Cuboid((0, 0), (1, 1)), (Cuboid((0, 0), (H, 1)), Cuboid((H, 0), (1, 1))))
        with pytest.raises(PreconditionViolation) as exc:
            DirichletScalingEngine().integerize(tiling)
        assert exc.value.key == "error_missing_shape"
