# path: src/infrastructure/svg_renderer.py
# description: Static SVG Figure Output v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'RendererPort'. One <polygon> per tile, fixed style, no
# timestamps or ids, so a given tiling always renders to the same bytes.
#
# This is the only place rationals become decimals. Every coordinate is
# rounded to TILING_SVG_DIGITS significant digits with decimal.Context;
# triangle tiles pass through Psi(a, b) = (a + b/2, b * sqrt(3)/2) first.
# SVG's y axis points down, so y is negated.

import logging
from decimal import Context, Decimal
from typing import List, Optional, Sequence, Tuple

from src.domain.exact_numeric import Rat
from src.domain.exceptions import RenderError
from src.domain.ports import RendererPort
from src.domain.tiling_model import CuboidTiling, RectRegion, RectTiling, Tiling
from src.infrastructure.integerizer import cuboid_cross_section
from src.infrastructure.settings import Settings, load_settings

logger = logging.getLogger(__name__)

PREAMBLE = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="%(viewbox)s">\n'
    '<g fill="%(fill)s" stroke="%(stroke)s" stroke-width="1" vector-effect="non-scaling-stroke">\n'
)
POSTAMBLE = "</g>\n</svg>\n"
TILE_FILL = "#f2efe6"
TILE_STROKE = "#1b1b1b"

Section = Tuple[int, int, Sequence[Rat]]


class _Emitter:
    """Exact rational to fixed-precision decimal text."""

    def __init__(self, digits: int):
        self.context = Context(prec=digits)
        self.half_sqrt3 = self.context.divide(Decimal(3).sqrt(self.context), 2)

    def decimal(self, value: Rat) -> Decimal:
        return self.context.divide(Decimal(value.numerator), Decimal(value.denominator))

    def text(self, value: Decimal) -> str:
        value = self.context.plus(value)
        if value == 0:
            return "0"
        return "{:f}".format(value.normalize(self.context))

    def rect_point(self, x: Rat, y: Rat) -> Tuple[Decimal, Decimal]:
        return self.decimal(x), -self.decimal(y)

    def psi_point(self, u: Rat, v: Rat) -> Tuple[Decimal, Decimal]:
        return self.decimal(u + v / 2), -self.context.multiply(self.decimal(v), self.half_sqrt3)


def _polygon(emitter: _Emitter, points: List[Tuple[Decimal, Decimal]]) -> str:
    coords = " ".join(f"{emitter.text(x)},{emitter.text(y)}" for x, y in points)
    return f'<polygon points="{coords}"/>'


def _document(emitter: _Emitter, polygons: List[List[Tuple[Decimal, Decimal]]], frame: List[Tuple[Decimal, Decimal]]) -> str:
    xs = [x for x, _ in frame]
    ys = [y for _, y in frame]
    left, top = min(xs), min(ys)
    viewbox = " ".join(emitter.text(v) for v in (left, top, max(xs) - left, max(ys) - top))
    body = "".join(_polygon(emitter, points) + "\n" for points in polygons)
    return PREAMBLE % {"viewbox": viewbox, "fill": TILE_FILL, "stroke": TILE_STROKE} + body + POSTAMBLE


def _rect_corners(emitter: _Emitter, r: RectRegion) -> List[Tuple[Decimal, Decimal]]:
    return [emitter.rect_point(x, y) for x, y in ((r.x0, r.y0), (r.x1, r.y0), (r.x1, r.y1), (r.x0, r.y1))]


def render_svg(tiling: Tiling, section: Optional[Section] = None, settings: Optional[Settings] = None) -> str:
    settings = settings or load_settings()
    emitter = _Emitter(settings.svg_digits)
    if isinstance(tiling, CuboidTiling):
        if section is None:
            raise RenderError(
                "box tilings render through a 2D cross-section", key="error_render_section_required", dim=tiling.dim
            )
        i, j, anchor = section
        tiling = cuboid_cross_section(tiling, (i, j), anchor)
    elif section is not None:
        raise RenderError("cross-sections only apply to box tilings", key="error_render_section_unused", kind=tiling.kind)

    if isinstance(tiling, RectTiling):
        polygons = [_rect_corners(emitter, tile) for tile in tiling.tiles]
        frame = _rect_corners(emitter, tiling.region)
    else:
        polygons = [[emitter.psi_point(u, v) for u, v in tile.vertices] for tile in tiling.tiles]
        frame = [emitter.psi_point(u, v) for u, v in tiling.region.vertices()]
    logger.debug("RENDER_SYS: kind=%s polygons=%d digits=%d", tiling.kind, len(polygons), settings.svg_digits)
    return _document(emitter, polygons, frame)


class SvgRenderer(RendererPort):
    def __init__(self, settings: Optional[Settings] = None):
        self._settings = settings or load_settings()

    def render(self, tiling: Tiling, section: Optional[Section] = None) -> str:
        return render_svg(tiling, section, self._settings)
