from fractions import Fraction as F

import pytest

from src.domain.exceptions import RenderError
from src.infrastructure.generators import dehn_sharpness_tiling, dyadic_triangle_tiling
from src.infrastructure.settings import Settings
from src.infrastructure.svg_renderer import SvgRenderer, render_svg


def _polygons(svg: str) -> int:
    return svg.count("<polygon ")


def test_unit_square(unit_square, settings):
    svg = render_svg(unit_square, settings=settings)
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert '<polygon points="0,0 1,0 1,-1 0,-1"/>' in svg
    assert 'viewBox="0 -1 1 1"' in svg


def test_sharpness_layout(settings):
    svg = render_svg(dehn_sharpness_tiling(), settings=settings)
    assert _polygons(svg) == 17
    assert 'viewBox="-1 -1 2 2"' in svg
    assert "-0.75" in svg


def test_output_is_deterministic(fibonacci_2x3, settings):
    assert render_svg(fibonacci_2x3, settings=settings) == render_svg(fibonacci_2x3, settings=settings)


def test_triangles_use_oblique_coordinates(four_split, settings):
    svg = render_svg(four_split, settings=settings)
    assert _polygons(svg) == 4
    assert "0.5,-0.8660254037" in svg


def test_precision_is_configurable(four_split):
    svg = render_svg(four_split, settings=Settings(svg_digits=4))
    assert "0.5,-0.866" in svg
    assert "0.8660" not in svg


def test_dyadic_triangle(settings):
    assert _polygons(render_svg(dyadic_triangle_tiling(1), settings=settings)) == 4


def test_box_section(half_cubes, settings):
    svg = SvgRenderer(settings).render(half_cubes, (0, 1, [F(1, 4)]))
    assert _polygons(svg) == 4


def test_boxes_need_a_section(half_cubes, settings):
    with pytest.raises(RenderError) as exc:
        render_svg(half_cubes, settings=settings)
    assert exc.value.key == "error_render_section_required"


def test_section_only_for_boxes(fibonacci_2x3, settings):
    with pytest.raises(RenderError) as exc:
        render_svg(fibonacci_2x3, (0, 1, []), settings=settings)
    assert exc.value.key == "error_render_section_unused"
