# path: src/infrastructure/generators.py
# description: Constructive Tiling Families v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'TilingGeneratorPort'. Builds the deterministic families
# (Fibonacci spiral, dyadic squares/cubes/triangles, the 1/4-sharpness
# layout) and the seeded random corpora used by the property suites.
#
# The sharpness layout is static knowledge and lives in the metadata
# directory next to the domain layer; it is loaded through the JSON codec
# like any other tiling document.
#
# Randomness comes only from numpy's Generator seeded per call, so the same
# (seed, depth) always reproduces the same tiling.

import json
import logging
import os
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.domain.exact_numeric import HALF, Rat
from src.domain.exceptions import PreconditionViolation
from src.domain.ports import GeneratorSpec, TilingGeneratorPort
from src.domain.tiling_model import (
    UNIT_TRIANGLE,
    Cuboid,
    CuboidTiling,
    ParallelogramRegion,
    RectRegion,
    RectTile,
    RectTiling,
    Tiling,
    TrapezoidRegion,
    TriTile,
    TriTiling,
    as_rect_tiling,
    four_split,
    scale_translate,
)
from src.infrastructure.serialization import parse_document
from src.infrastructure.settings import Settings, load_settings

logger = logging.getLogger(__name__)

METADATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "domain", "metadata")

FAMILIES = (
    "fibonacci",
    "dyadic_square",
    "dyadic_cube",
    "dyadic_triangle",
    "dehn_sharpness",
    "random_guillotine",
    "random_ratio",
    "random_trapezoid",
    "random_parallelogram",
)


def _at_least(name: str, value: int, minimum: int) -> int:
    value = int(value)
    if value < minimum:
        raise PreconditionViolation(
            f"{name} must be at least {minimum}", key="error_generator_parameter", parameter=name, value=value
        )
    return value


# --- Deterministic families ---------------------------------------------------


def fibonacci_numbers(count: int) -> List[int]:
    """u_1 .. u_count with u_1 = u_2 = 1."""
    values = [1, 1]
    while len(values) < count:
        values.append(values[-1] + values[-2])
    return values[:count]


def fibonacci_tiling(n: int) -> RectTiling:
    """
    Spiral: starting from a unit square, square u_m is attached on the
    right, below, left, above, right, ... of the current bounding box, whose
    matching side is always exactly u_m. The result is moved to the origin.
    """
    n = _at_least("n", n, 1)
    u = fibonacci_numbers(n)
    x0, x1, y0, y1 = 0, 1, 0, 1
    boxes = [(0, 1, 0, 1)]
    for m in range(1, n):
        side = u[m]
        direction = (m - 1) % 4
        if direction == 0:
            box = (x1, x1 + side, y0, y0 + side)
        elif direction == 1:
            box = (x0, x0 + side, y0 - side, y0)
        elif direction == 2:
            box = (x0 - side, x0, y1 - side, y1)
        else:
            box = (x0, x0 + side, y1, y1 + side)
        boxes.append(box)
        x0, x1 = min(x0, box[0]), max(x1, box[1])
        y0, y1 = min(y0, box[2]), max(y1, box[3])
    tiles = tuple(RectTile(b[0] - x0, b[1] - x0, b[2] - y0, b[3] - y0) for b in boxes)
    return RectTiling(RectRegion(0, x1 - x0, 0, y1 - y0), tiles)


def dyadic_cube_tiling(d: int, k: int) -> CuboidTiling:
    """
    Unit d-cube: each level keeps 2^d - 1 of the 2^d half-size cells and
    recurses into the upper corner cell; the last level keeps all 2^d.
    """
    d = _at_least("d", d, 2)
    k = _at_least("k", k, 1)
    tiles: List[Cuboid] = []
    origin = (Fraction(0),) * d
    side = Fraction(1)
    for level in range(1, k + 1):
        half = side / 2
        for corner in product((0, 1), repeat=d):
            if level < k and all(corner):
                continue
            lo = tuple(o + c * half for o, c in zip(origin, corner))
            tiles.append(Cuboid(lo, tuple(v + half for v in lo)))
        origin = tuple(o + half for o in origin)
        side = half
    return CuboidTiling(Cuboid((0,) * d, (1,) * d), tuple(tiles))


def dyadic_square_tiling(k: int) -> RectTiling:
    return as_rect_tiling(dyadic_cube_tiling(2, k))


def dyadic_triangle_tiling(k: int) -> TriTiling:
    """T(0,0,1): each level four-splits the apex triangle, keeps three pieces and recurses into the apex."""
    k = _at_least("k", k, 1)
    tiles: List[TriTile] = []
    apex = TriTile(0, 0, 1)
    for level in range(1, k + 1):
        left, right, top, centre = four_split(apex)
        if level == k:
            tiles.extend((left, right, centre, top))
        else:
            tiles.extend((left, right, centre))
            apex = top
    return TriTiling(UNIT_TRIANGLE, tuple(tiles))


def load_metadata(name: str) -> dict:
    path = os.path.join(METADATA_DIR, f"{name}.json")
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def dehn_sharpness_tiling() -> RectTiling:
    """The 17-square layout of [-1,1]^2 whose coordinates sit exactly 1/4 from integers."""
    entry = load_metadata("dehn_sharpness")
    return parse_document(entry["tiling"])


# --- Random corpora ---------------------------------------------------------------


def _fraction_pool(max_denominator: int) -> List[Rat]:
    """Every a/b in (0, 1) with b <= max_denominator, sorted."""
    return sorted({Fraction(a, b) for b in range(2, max_denominator + 1) for a in range(1, b)})


def _choice(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(0, len(items)))]


def _split_box(lo: Tuple[Rat, ...], hi: Tuple[Rat, ...], axis: int, cut: Rat):
    left_hi = hi[:axis] + (cut,) + hi[axis + 1:]
    right_lo = lo[:axis] + (cut,) + lo[axis + 1:]
    return (lo, left_hi), (right_lo, hi)


def _guillotine_boxes(rng: np.random.Generator, d: int, depth: int, max_denominator: int) -> List[Tuple[Tuple[Rat, ...], Tuple[Rat, ...]]]:
    """Split every box once per level along a random axis, preferring cut values not yet used on that axis."""
    pool = _fraction_pool(max_denominator)
    boxes = [((Fraction(0),) * d, (Fraction(1),) * d)]
    used = [{Fraction(0), Fraction(1)} for _ in range(d)]
    for _ in range(depth):
        refined = []
        for lo, hi in boxes:
            axis = int(rng.integers(0, d))
            cut = lo[axis] + _choice(rng, pool) * (hi[axis] - lo[axis])
            for _ in range(4):
                if cut not in used[axis]:
                    break
                cut = lo[axis] + _choice(rng, pool) * (hi[axis] - lo[axis])
            used[axis].add(cut)
            refined.extend(_split_box(lo, hi, axis, cut))
        boxes = refined
    return boxes


def _random_four_splits(rng: np.random.Generator, tiles: List[TriTile], count: int) -> List[TriTile]:
    tiles = list(tiles)
    for _ in range(count):
        index = int(rng.integers(0, len(tiles)))
        tiles[index:index + 1] = list(four_split(tiles[index]))
    return tiles


def random_guillotine(kind: str, seed: int, depth: int, d: int = 3, max_denominator: Optional[int] = None) -> Tiling:
    """
    rect / cuboid: every tile is cut once per level (2^depth tiles).
    triangle: `depth` four-splits of randomly chosen tiles (3 depth + 1 tiles).
    """
    depth = _at_least("depth", depth, 0)
    max_denominator = max_denominator or load_settings().max_denominator
    rng = np.random.default_rng(seed)
    if kind == "rect":
        boxes = _guillotine_boxes(rng, 2, depth, max_denominator)
        return RectTiling(RectRegion(0, 1, 0, 1), tuple(RectTile(lo[0], hi[0], lo[1], hi[1]) for lo, hi in boxes))
    if kind == "cuboid":
        d = _at_least("d", d, 2)
        boxes = _guillotine_boxes(rng, d, depth, max_denominator)
        return CuboidTiling(Cuboid((0,) * d, (1,) * d), tuple(Cuboid(lo, hi) for lo, hi in boxes))
    if kind == "triangle":
        return TriTiling(UNIT_TRIANGLE, tuple(_random_four_splits(rng, [TriTile(0, 0, 1)], depth)))
    raise PreconditionViolation("unknown guillotine kind", key="error_generator_parameter", parameter="kind", value=kind)


def _ratio(width: Rat, height: Rat) -> Tuple[int, int]:
    aspect = height / width
    return (aspect.numerator, aspect.denominator)


def random_ratio_guillotine(seed: int, depth: int, max_entry: int = 5, max_denominator: Optional[int] = None) -> RectTiling:
    """
    Guillotine tiling of the unit square where every piece's reduced
    height:width ratio has both entries <= max_entry. Tiles with no
    admissible cut stay whole.
    """
    depth = _at_least("depth", depth, 0)
    max_entry = _at_least("max_entry", max_entry, 1)
    pool = _fraction_pool(max_denominator or load_settings().max_denominator)
    rng = np.random.default_rng(seed)

    def admissible(width: Rat, height: Rat) -> bool:
        return max(_ratio(width, height)) <= max_entry

    rects = [(Fraction(0), Fraction(1), Fraction(0), Fraction(1))]
    for _ in range(depth):
        refined = []
        for x0, x1, y0, y1 in rects:
            w, h = x1 - x0, y1 - y0
            options = []
            for t in pool:
                if admissible(t * w, h) and admissible((1 - t) * w, h):
                    options.append((0, t))
                if admissible(w, t * h) and admissible(w, (1 - t) * h):
                    options.append((1, t))
            if not options:
                refined.append((x0, x1, y0, y1))
                continue
            axis, t = _choice(rng, options)
            if axis == 0:
                cut = x0 + t * w
                refined.extend([(x0, cut, y0, y1), (cut, x1, y0, y1)])
            else:
                cut = y0 + t * h
                refined.extend([(x0, x1, y0, cut), (x0, x1, cut, y1)])
        rects = refined
    tiles = tuple(RectTile(x0, x1, y0, y1, ratio=_ratio(x1 - x0, y1 - y0)) for x0, x1, y0, y1 in rects)
    return RectTiling(RectRegion(0, 1, 0, 1), tiles)


def _random_placement(rng: np.random.Generator, tiling: TriTiling) -> TriTiling:
    factor = Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10)))
    offset = (Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))), Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))))
    return scale_translate(tiling, factor, offset)


def random_trapezoid_tiling(seed: int, depth: int) -> TriTiling:
    """T(0,0,1) cut at half height (three tiles), refined by random four-splits, then placed randomly."""
    depth = _at_least("depth", depth, 0)
    rng = np.random.default_rng(seed)
    start = [TriTile(0, 0, HALF), TriTile(HALF, 0, HALF), TriTile(HALF, HALF, -HALF)]
    tiling = TriTiling(TrapezoidRegion(0, 0, 1, HALF, HALF), tuple(_random_four_splits(rng, start, depth)))
    return _random_placement(rng, tiling)


def random_parallelogram_tiling(seed: int, depth: int) -> TriTiling:
    """A rhombus of two half-size tiles, refined by random four-splits, then placed randomly."""
    depth = _at_least("depth", depth, 0)
    rng = np.random.default_rng(seed)
    start = [TriTile(0, 0, HALF), TriTile(HALF, HALF, -HALF)]
    tiling = TriTiling(ParallelogramRegion(0, 0, HALF, HALF), tuple(_random_four_splits(rng, start, depth)))
    return _random_placement(rng, tiling)


# --- Port -------------------------------------------------------------------------


class TilingGenerator(TilingGeneratorPort):
    """Dispatches a family name plus integer parameters to its constructor."""

    def __init__(self, settings: Optional[Settings] = None):
        self._settings = settings or load_settings()

    def generate(self, family: str, **params: int) -> Tiling:
        seed = params.get("seed", 0)
        depth = params.get("depth", 3)
        builders: Dict[str, Callable[[], Tiling]] = {
            "fibonacci": lambda: fibonacci_tiling(params.get("n", 1)),
            "dyadic_square": lambda: dyadic_square_tiling(params.get("k", 1)),
            "dyadic_cube": lambda: dyadic_cube_tiling(params.get("d", 3), params.get("k", 1)),
            "dyadic_triangle": lambda: dyadic_triangle_tiling(params.get("k", 1)),
            "dehn_sharpness": dehn_sharpness_tiling,
            "random_guillotine": lambda: random_guillotine(
                params.get("kind", "rect"), seed, depth, params.get("d", 3), self._settings.max_denominator
            ),
            "random_ratio": lambda: random_ratio_guillotine(seed, depth, max_denominator=self._settings.max_denominator),
            "random_trapezoid": lambda: random_trapezoid_tiling(seed, depth),
            "random_parallelogram": lambda: random_parallelogram_tiling(seed, depth),
        }
        if family not in builders:
            raise PreconditionViolation("unknown generator family", key="error_generator_parameter", family=family)
        tiling = builders[family]()
        logger.info("GENERATOR_SYS: family=%s params=%s tiles=%d", family, params, len(tiling.tiles))
        return tiling

    def generate_spec(self, spec: GeneratorSpec) -> Tiling:
        return self.generate(spec.family, **dict(spec.params))
