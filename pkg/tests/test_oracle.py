import pytest

from src.domain.exceptions import PreconditionViolation, TheoremViolation
from src.domain.tiling_model import RectRegion, normalize_rect
from src.infrastructure.generators import dehn_sharpness_tiling, fibonacci_numbers, fibonacci_tiling
from src.infrastructure.oracle import (
    BruteForceOracle,
    bound_audit,
    denominator_audit,
    min_squares_exhaustive,
    minimal_scale_oracle,
    multiple_horizon,
    multiple_stability_check,
    oracle_certificate,
)
from src.infrastructure.settings import Settings
from src.infrastructure.validator import validate


class TestMinimalScale:
    def test_sharpness_layout(self):
        assert minimal_scale_oracle(dehn_sharpness_tiling()) == 4

    @pytest.mark.parametrize("n", range(1, 10))
    def test_normalized_fibonacci(self, n):
        assert minimal_scale_oracle(normalize_rect(fibonacci_tiling(n))) == fibonacci_numbers(n + 1)[n]

    def test_rectangles_use_both_sides(self, ratio_cut):
        assert minimal_scale_oracle(ratio_cut) == 3

    def test_triangles(self, four_split, wide_parallelogram):
        assert minimal_scale_oracle(four_split) == 2
        assert minimal_scale_oracle(wide_parallelogram) == 1


class TestCertificate:
    def test_sharpness_layout(self):
        cert = oracle_certificate(dehn_sharpness_tiling())
        assert (cert.factor, cert.q) == (4, 8)
        assert cert.bound is None
        assert cert.scaled.region == RectRegion(0, 8, 0, 8)
        assert sorted(set(cert.integer_sides)) == [1, 2, 3]
        assert cert.notes == ["lambda_min=4"]

    def test_fibonacci_matches_the_pipeline(self, fibonacci_2x3):
        cert = oracle_certificate(fibonacci_2x3)
        assert (cert.factor, cert.q) == (1, 3)

    def test_parallelogram_measures_its_enclosing_triangle(self, wide_parallelogram):
        assert oracle_certificate(wide_parallelogram).q == 3

    def test_rectangles_report_side_pairs(self, ratio_cut):
        assert oracle_certificate(ratio_cut).integer_sides == [[1, 3], [2, 3]]


class TestMinSquares:
    @pytest.mark.parametrize("width, height, count", [(1, 1, 1), (2, 3, 3), (5, 6, 5), (3, 2, 3), (4, 6, 3)])
    def test_known_minima(self, settings, width, height, count):
        result = min_squares_exhaustive(width, height, settings=settings)
        assert result.exact
        assert result.count == count
        assert len(result.witness.tiles) == count
        assert result.witness.is_square_tiling
        assert validate(result.witness).passed

    def test_cap_below_minimum(self, settings):
        result = min_squares_exhaustive(5, 6, max_tiles=4, settings=settings)
        assert result.status == "exceeds_max_tiles"
        assert result.witness is None

    def test_cap_below_greedy_still_finds_minimum(self, settings):
        result = min_squares_exhaustive(5, 6, max_tiles=5, settings=settings)
        assert (result.status, result.count) == ("optimal", 5)

    def test_node_limit_is_not_an_answer(self):
        result = min_squares_exhaustive(5, 6, settings=Settings(search_node_limit=5))
        assert result.status == "node_limit"
        assert result.count is None
        assert not result.exact

    def test_positive_sides(self, settings):
        with pytest.raises(PreconditionViolation):
            min_squares_exhaustive(0, 3, settings=settings)


class TestAudits:
    def test_bound_holds(self):
        audit = bound_audit(2, 3, 3)
        assert audit.holds
        assert audit.reference == {"conway_2^n": True}

    def test_bound_violation_is_fatal(self):
        with pytest.raises(TheoremViolation):
            bound_audit(10, 1, 1)

    def test_coprime_sides_required(self):
        with pytest.raises(PreconditionViolation) as exc:
            bound_audit(2, 4, 2)
        assert exc.value.key == "error_not_coprime"

    def test_denominator_audit(self, fibonacci_2x3):
        report = denominator_audit(fibonacci_2x3)
        assert report["denominator_lcm"] == 3
        assert report["side_ratio"] == "3"
        assert report["holds"]

    def test_denominator_audit_needs_squares(self, ratio_cut):
        with pytest.raises(PreconditionViolation):
            denominator_audit(ratio_cut)

    def test_horizon(self):
        assert multiple_horizon(1, 1, 1) == [1, 2, 3, 4]
        assert multiple_horizon(2, 3, 3) == list(range(1, 22))
        assert multiple_horizon(5, 6, 1) == []

    def test_multiples_never_need_more_squares(self, settings):
        results = multiple_stability_check(2, 3, k_cap=3, settings=settings)
        assert sorted(results) == [1, 2, 3]
        assert all(result.count == 3 for result in results.values())


def test_port(settings, fibonacci_2x3):
    oracle = BruteForceOracle(settings)
    assert oracle.minimal_scale(fibonacci_2x3) == 1
    assert oracle.certificate(fibonacci_2x3).pipeline == "oracle"
    assert oracle.min_squares(2, 3).count == 3
    assert oracle.audit(2, 3, 3).holds
    assert oracle.horizon(1, 1, 1) == [1, 2, 3, 4]
