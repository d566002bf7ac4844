# path: src/infrastructure/integerizer.py
# description: Integer Rescaling Pipelines v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'ScalingEnginePort'. Every pipeline follows the same
# lifecycle:
#   1. GATE: the input must partition its region (validator) and carry the
#      annotations its family needs (squares, ratios, cubes, shapes).
#   2. NORMALIZE: translate to the origin and scale a chosen side to 1.
#   3. APPROXIMATE: collect the vertex coordinates that matter and ask the
#      Dirichlet engine for the smallest q bringing them within 1/4 (or the
#      per-tile tolerance) of integers.
#   4. CERTIFY: scale by q, confirm integer side lengths and the proven
#      bound exactly. A failed certification is a TheoremViolation.
#
# The half-shifted grid-line counts and the almost-integer snapping are the
# mechanism behind step 4 and are exposed as stand-alone checks.

import logging
import math
from fractions import Fraction
from itertools import product
from typing import Callable, List, Mapping, Optional, Sequence, Tuple, Union

from src.domain.exact_numeric import (
    HALF,
    QUARTER,
    PowerBound,
    Rat,
    as_rat,
    format_rational,
    is_half_integer,
    is_integer,
    nearest_int_distance,
    round_nearest,
)
from src.domain.exceptions import PreconditionViolation, TheoremViolation
from src.domain.ports import (
    ApproxGroup,
    ApproximationEnginePort,
    ApproxRequest,
    FlowVerdict,
    GridLineCount,
    ScalingCertificate,
    ScalingEnginePort,
)
from src.domain.tiling_model import (
    Cuboid,
    CuboidTiling,
    ParallelogramRegion,
    RectRegion,
    RectTile,
    RectTiling,
    Tiling,
    TrapezoidRegion,
    TriangleRegion,
    TriTile,
    TriTiling,
    augment_to_triangle,
    normalize_rect,
    normalize_triangle,
    scale_translate,
)
from src.infrastructure.analyzer import axis_coordinates, cuboid_best_axis_pair, rect_coord_sets, tri_best_rotation
from src.infrastructure.dirichlet import DirichletEngine
from src.infrastructure.validator import require_valid

logger = logging.getLogger(__name__)

RFunction = Union[Callable[[Rat], Rat], Mapping[Rat, Rat]]

_EXCLUDED = (Fraction(0), Fraction(1))


# --- Half-shifted grid lines --------------------------------------------------


def _require_not_half(*values: Rat) -> None:
    for value in values:
        if is_half_integer(value):
            raise PreconditionViolation(
                "coordinate lies on a half-shifted grid line",
                key="error_half_integer_endpoint",
                coordinate=format_rational(value),
            )


def count_half_shifted(lo: Rat, hi: Rat) -> int:
    """Number of integers k with lo < k + 1/2 < hi, i.e. r(hi) - r(lo)."""
    lo, hi = as_rat(lo), as_rat(hi)
    if lo >= hi:
        raise PreconditionViolation("interval needs lo < hi", key="error_empty_interval", lo=format_rational(lo), hi=format_rational(hi))
    _require_not_half(lo, hi)
    return round_nearest(hi) - round_nearest(lo)


def _require_quarter(*values: Rat) -> None:
    for value in values:
        if nearest_int_distance(value) >= QUARTER:
            raise PreconditionViolation(
                "coordinate is not within 1/4 of an integer",
                key="error_quarter_distance",
                coordinate=format_rational(value),
                distance=format_rational(nearest_int_distance(value)),
            )


def rect_grid_lines(tile: RectRegion) -> GridLineCount:
    return GridLineCount(v=count_half_shifted(tile.x0, tile.x1), h=count_half_shifted(tile.y0, tile.y1))


def check_balanced_lines_square(tile: RectTile) -> bool:
    """A square whose coordinates all lie within 1/4 of integers meets as many vertical as horizontal lines."""
    if not tile.is_square:
        raise PreconditionViolation("tile is not a square", key="error_not_square")
    _require_quarter(tile.x0, tile.x1, tile.y0, tile.y1)
    return rect_grid_lines(tile).balanced


def count_half_shifted_diag(tile: TriTile) -> GridLineCount:
    """Diagonal lines {a = k + 1/2} and horizontal lines {b = k + 1/2} through a triangle tile."""
    a, b, c = tile.a, tile.b, tile.c
    _require_not_half(a, b, a + c, b + c)
    return GridLineCount(
        h=abs(round_nearest(b + c) - round_nearest(b)),
        diag=abs(round_nearest(a + c) - round_nearest(a)),
    )


def check_balanced_lines_triangle(tile: TriTile) -> bool:
    _require_quarter(tile.a, tile.b, tile.a + tile.c, tile.b + tile.c)
    return count_half_shifted_diag(tile).balanced


# --- Rational aspect ratio ------------------------------------------------------


def dehn_aspect_ratio(tiling: RectTiling) -> Rat:
    """
    Counts v of vertical and h of horizontal half-shifted lines across the
    region. When no vertex sits on a line, some vertical line meets the
    region and every square is balanced, h/v is the region's aspect ratio.
    """
    if not tiling.is_square_tiling:
        raise PreconditionViolation("aspect-ratio argument needs square tiles", key="error_not_square")
    region = tiling.region
    values = {region.x0, region.x1, region.y0, region.y1}
    for tile in tiling.tiles:
        values.update((tile.x0, tile.x1, tile.y0, tile.y1))
    _require_not_half(*sorted(values))

    v = count_half_shifted(region.x0, region.x1)
    if v == 0:
        raise PreconditionViolation("no half-shifted vertical line meets the region", key="error_no_vertical_line")
    for k, tile in enumerate(tiling.tiles):
        if not rect_grid_lines(tile).balanced:
            raise PreconditionViolation("tile meets unequal line counts", key="error_unbalanced_tile", tile=k)

    h = count_half_shifted(region.y0, region.y1)
    ratio = Fraction(h, v)
    if ratio != region.height / region.width:
        raise TheoremViolation(
            "line-count ratio differs from the aspect ratio",
            ratio=format_rational(ratio),
            aspect=format_rational(region.height / region.width),
        )
    return ratio


# --- Flow harness ---------------------------------------------------------------


def _evaluator(r: RFunction) -> Callable[[Rat], Rat]:
    if isinstance(r, Mapping):
        return lambda x: as_rat(r[x])
    return lambda x: as_rat(r(x))


def rfunction_flow_check(tiling: RectTiling, r: RFunction) -> FlowVerdict:
    """
    Hypothesis per tile: (b-a)(r(d)-r(c)) == (r(b)-r(a))(d-c).
    Conclusion when all hold: r(c) == c and r(d) == d for every tile.
    """
    rv = _evaluator(r)
    region = tiling.region
    for y in (region.y0, region.y1):
        if rv(y) != y:
            raise PreconditionViolation(
                "r must fix the region's bottom and top", key="error_region_not_fixed", coordinate=format_rational(y)
            )
    verdict = FlowVerdict(precondition_ok=True)
    for k, t in enumerate(tiling.tiles):
        if (t.x1 - t.x0) * (rv(t.y1) - rv(t.y0)) != (rv(t.x1) - rv(t.x0)) * (t.y1 - t.y0):
            verdict.hypothesis_failures.append(k)
    if verdict.hypotheses_hold:
        verdict.conclusion_failures = [k for k, t in enumerate(tiling.tiles) if rv(t.y0) != t.y0 or rv(t.y1) != t.y1]
    return verdict


def _tri_bottom_top(tiling: TriTiling) -> Tuple[Rat, Rat]:
    region = tiling.region
    if isinstance(region, TriangleRegion):
        return region.B, region.B + region.C
    if isinstance(region, TrapezoidRegion):
        return region.B, region.B + region.height
    return region.B, region.B + region.q


def tri_rfunction_flow_check(tiling: TriTiling, r: RFunction) -> FlowVerdict:
    """
    Hypothesis per tile: r(a+c) - r(a) == r(b+c) - r(b).
    Conclusion when all hold: r(b) == b and r(b+c) == b+c for every tile.
    """
    rv = _evaluator(r)
    for y in _tri_bottom_top(tiling):
        if rv(y) != y:
            raise PreconditionViolation(
                "r must fix the region's bottom and top", key="error_region_not_fixed", coordinate=format_rational(y)
            )
    verdict = FlowVerdict(precondition_ok=True)
    for k, t in enumerate(tiling.tiles):
        if rv(t.a + t.c) - rv(t.a) != rv(t.b + t.c) - rv(t.b):
            verdict.hypothesis_failures.append(k)
    if verdict.hypotheses_hold:
        verdict.conclusion_failures = [
            k for k, t in enumerate(tiling.tiles) if rv(t.b) != t.b or rv(t.b + t.c) != t.b + t.c
        ]
    return verdict


# --- Almost-integer snapping ----------------------------------------------------


def almost_integer_snap(tiling: RectTiling) -> List[int]:
    """
    Region bottom and top (or left and right) integral and every vertex
    coordinate strictly within 1/4 of an integer: each square's side is the
    number of half-shifted lines across it, hence an integer.
    """
    if not tiling.is_square_tiling:
        raise PreconditionViolation("snapping needs square tiles", key="error_not_square")
    region = tiling.region
    vertical = is_integer(region.y0) and is_integer(region.y1)
    if not vertical and not (is_integer(region.x0) and is_integer(region.x1)):
        raise PreconditionViolation("region needs two integral opposite sides", key="error_region_not_integral")
    for tile in tiling.tiles:
        _require_quarter(tile.x0, tile.x1, tile.y0, tile.y1)

    sides = []
    for k, tile in enumerate(tiling.tiles):
        count = count_half_shifted(tile.y0, tile.y1) if vertical else count_half_shifted(tile.x0, tile.x1)
        if count != tile.width:
            raise TheoremViolation("square side differs from its line count", tile=k, side=format_rational(tile.width), count=count)
        sides.append(count)
    return sides


def almost_integer_snap_triangle(tiling: TriTiling) -> List[int]:
    """Triangle analogue: integral bottom and top, all Psi-coordinates within 1/4 of integers."""
    bottom, top = _tri_bottom_top(tiling)
    if not (is_integer(bottom) and is_integer(top)):
        raise PreconditionViolation("region bottom and top must be integral", key="error_region_not_integral")
    for tile in tiling.tiles:
        _require_quarter(tile.a, tile.b, tile.a + tile.c, tile.b + tile.c)

    sides = []
    for k, tile in enumerate(tiling.tiles):
        lines = count_half_shifted_diag(tile)
        if not (lines.h == lines.diag == tile.side):
            raise TheoremViolation(
                "triangle side differs from its line counts", tile=k, side=format_rational(tile.side), h=lines.h, diag=lines.diag
            )
        sides.append(lines.h)
    return sides


# --- Shared certification -------------------------------------------------------


def _integral(value: Rat, pipeline: str, **context) -> int:
    if not is_integer(value):
        raise TheoremViolation("scaled side is not an integer", pipeline=pipeline, side=format_rational(value), **context)
    return int(value)


def _require_bound(bound: PowerBound, value: Rat, pipeline: str, what: str) -> None:
    if not bound.admits(value):
        raise TheoremViolation(f"{what} exceeds the proven bound", pipeline=pipeline, value=format_rational(value), bound=str(bound))


def _log_certificate(cert: ScalingCertificate) -> None:
    logger.info(
        "PIPELINE_SYS: pipeline=%s n=%d |S|=%d q=%d factor=%s bound=%s",
        cert.pipeline,
        len(cert.scaled.tiles),
        len(cert.coordinate_set),
        cert.q,
        format_rational(cert.factor),
        cert.bound,
    )


def _without(values, excluded=_EXCLUDED) -> Tuple[Rat, ...]:
    return tuple(sorted(set(values).difference(excluded)))


# --- Rectangle pipelines ---------------------------------------------------------


def _rect_origin_scale(tiling: RectTiling, factor: Rat) -> RectTiling:
    region = tiling.region
    return scale_translate(tiling, factor, (-factor * region.x0, -factor * region.y0))


def integerize_square_tiling(tiling: RectTiling, engine: Optional[ApproximationEnginePort] = None) -> ScalingCertificate:
    engine = engine or DirichletEngine()
    require_valid(tiling)
    if not tiling.is_square_tiling:
        raise PreconditionViolation("square pipeline needs square tiles", key="error_not_square")
    n = len(tiling.tiles)
    normalized = normalize_rect(tiling)
    coords = rect_coord_sets(normalized).coordinates
    s = _without(coords[0] + coords[1])
    result = engine.dirichlet(s, 4)
    q = result.q

    factor = q / max(tiling.region.width, tiling.region.height)
    scaled = _rect_origin_scale(tiling, factor)
    sides = [_integral(t.width, "square", tile=k) for k, t in enumerate(scaled.tiles)]
    bound = PowerBound(4, Fraction(n))
    _require_bound(PowerBound(4, Fraction(len(s))), q, "square", "q")
    _require_bound(bound, q, "square", "q")
    require_valid(scaled)

    cert = ScalingCertificate(
        pipeline="square",
        q=q,
        bound=bound,
        factor=factor,
        scaled=scaled,
        integer_sides=sides,
        coordinate_set=s,
        dirichlet_bound=result.bound,
    )
    _log_certificate(cert)
    return cert


def _check_ratios(tiling: RectTiling) -> None:
    for k, tile in enumerate(tiling.tiles):
        if tile.ratio is None:
            raise PreconditionViolation("every tile needs a declared ratio", key="error_missing_ratio", tile=k)


def integerize_rect_tiling(tiling: RectTiling, engine: Optional[ApproximationEnginePort] = None) -> ScalingCertificate:
    """
    Tiles with declared ratios p:q (p vertical). Per tile c = height / p must
    land within 1/(2 max(p, q)) of an integer; the scaled tile is then the
    integer multiple c * (q, p).
    """
    engine = engine or DirichletEngine()
    require_valid(tiling)
    _check_ratios(tiling)
    n = len(tiling.tiles)
    normalized = normalize_rect(tiling)
    coords = rect_coord_sets(normalized).coordinates
    s0 = _without(coords[0] + coords[1])
    groups = [ApproxGroup(frozenset(s0), 4)]
    for tile in normalized.tiles:
        p, q_ = tile.ratio
        groups.append(ApproxGroup(frozenset({tile.height / p}), 2 * max(p, q_)))
    result = engine.dirichlet_varied(ApproxRequest(tuple(groups)))
    q = result.q

    factor = q / max(tiling.region.width, tiling.region.height)
    scaled = _rect_origin_scale(tiling, factor)
    sides = []
    for k, tile in enumerate(scaled.tiles):
        p, q_ = tile.ratio
        multiple = tile.height / p
        if not is_integer(multiple) or tile.width != multiple * q_:
            raise TheoremViolation(
                "scaled tile is not an integer multiple of its ratio",
                pipeline="ratio",
                tile=k,
                sides=[format_rational(tile.width), format_rational(tile.height)],
                ratio=[p, q_],
            )
        sides.append([int(tile.width), int(tile.height)])
    bound = PowerBound(8, Fraction(n), Fraction(math.prod(max(t.ratio) for t in tiling.tiles)))
    _require_bound(bound, q, "ratio", "q")
    require_valid(scaled)

    cert = ScalingCertificate(
        pipeline="ratio",
        q=q,
        bound=bound,
        factor=factor,
        scaled=scaled,
        integer_sides=sides,
        coordinate_set=s0,
        dirichlet_bound=result.bound,
    )
    _log_certificate(cert)
    return cert


# --- Box pipelines ----------------------------------------------------------------


def cuboid_cross_section(tiling: CuboidTiling, axes: Tuple[int, int], anchor: Sequence[Rat]) -> RectTiling:
    """
    Intersect with the plane spanned by axes (i, j) through `anchor`, given
    for the remaining axes in increasing order.
    """
    i, j = axes
    d = tiling.dim
    if i == j or not (0 <= i < d and 0 <= j < d):
        raise PreconditionViolation("section axes must be two distinct axes", key="error_section_axes", axes=[i, j])
    others = [k for k in range(d) if k not in (i, j)]
    anchor = [as_rat(v) for v in anchor]
    if len(anchor) != len(others):
        raise PreconditionViolation(
            "anchor needs one value per remaining axis", key="error_dimension_mismatch", expected=len(others), got=len(anchor)
        )
    region = tiling.region
    for axis, value in zip(others, anchor):
        if not region.lo[axis] < value < region.hi[axis]:
            raise PreconditionViolation(
                "anchor misses the region", key="error_anchor_outside", axis=axis, coordinate=format_rational(value)
            )
        if value in axis_coordinates(tiling, axis):
            raise PreconditionViolation(
                "anchor hits a vertex coordinate", key="error_anchor_on_vertex", axis=axis, coordinate=format_rational(value)
            )

    def meets(tile: Cuboid) -> bool:
        return all(tile.lo[axis] < value < tile.hi[axis] for axis, value in zip(others, anchor))

    tiles = tuple(RectTile(t.lo[i], t.hi[i], t.lo[j], t.hi[j]) for t in tiling.tiles if meets(t))
    return RectTiling(RectRegion(region.lo[i], region.hi[i], region.lo[j], region.hi[j]), tiles)


def section_anchors(tiling: CuboidTiling, axes: Tuple[int, int]) -> List[Tuple[Rat, ...]]:
    """One anchor per cell between consecutive distinct coordinates of the remaining axes (cell midpoints)."""
    others = [k for k in range(tiling.dim) if k not in axes]
    midpoints = []
    for axis in others:
        coords = axis_coordinates(tiling, axis)
        midpoints.append([(lo + hi) * HALF for lo, hi in zip(coords, coords[1:])])
    return [tuple(anchor) for anchor in product(*midpoints)]


def verify_by_sections(tiling: CuboidTiling, axes: Tuple[int, int]) -> int:
    """
    Redundancy path: every section through a cell midpoint must be a valid
    square tiling whose snapped sides match. Returns the number of sections.
    """
    anchors = section_anchors(tiling, axes)
    for anchor in anchors:
        section = cuboid_cross_section(tiling, axes, anchor)
        require_valid(section)
        snapped = almost_integer_snap(section)
        if snapped != [int(t.width) for t in section.tiles]:
            raise TheoremViolation("section sides differ from snapped sides", axes=list(axes), anchor=[format_rational(a) for a in anchor])
    return len(anchors)


def _box_origin_scale(tiling: CuboidTiling, factor: Rat) -> CuboidTiling:
    return scale_translate(tiling, factor, tuple(-factor * v for v in tiling.region.lo))


def _longest_axis(region: Cuboid) -> int:
    sides = region.sides
    return min(range(len(sides)), key=lambda k: (-sides[k], k))


def integerize_hypercube_tiling(
    tiling: CuboidTiling, engine: Optional[ApproximationEnginePort] = None, strategy: str = "best_pair"
) -> ScalingCertificate:
    """
    strategy "best_pair": the axis pair with fewest coordinates, bound on the
    shortest region side 4^(2(n-1)/d + 1).
    strategy "longest": i along the region's longest side, bound 4^n on it.
    """
    engine = engine or DirichletEngine()
    require_valid(tiling)
    if not tiling.is_cube_tiling:
        raise PreconditionViolation("hypercube pipeline needs cube tiles", key="error_not_cube")
    n, d = len(tiling.tiles), tiling.dim

    if strategy == "best_pair":
        pair = cuboid_best_axis_pair(tiling)
        i, j = pair.i, pair.j
        if tiling.region.sides[j] > tiling.region.sides[i]:
            # i carries the longer region side of the pair
            i, j = j, i
    elif strategy == "longest":
        i = _longest_axis(tiling.region)
        sizes = [len(axis_coordinates(tiling, k)) for k in range(d)]
        j = min((k for k in range(d) if k != i), key=lambda k: (sizes[k], k))
    else:
        raise PreconditionViolation("unknown hypercube strategy", key="error_strategy", strategy=strategy)

    base = 1 / tiling.region.sides[i]
    normalized = _box_origin_scale(tiling, base)
    s = _without(axis_coordinates(normalized, i) + axis_coordinates(normalized, j))
    result = engine.dirichlet(s, 4)
    q = result.q

    factor = q * base
    scaled = _box_origin_scale(tiling, factor)
    sides = [_integral(t.sides[i], "hypercube", tile=k) for k, t in enumerate(scaled.tiles)]
    region_sides = scaled.region.sides
    exponent = Fraction(2 * (n - 1) + d, d)
    if strategy == "best_pair":
        bound = PowerBound(4, exponent)
        _require_bound(bound, min(region_sides), "hypercube", "shortest side")
        _require_bound(PowerBound(4, exponent, Fraction(n)), max(region_sides), "hypercube", "longest side")
    else:
        bound = PowerBound(4, Fraction(n))
        _require_bound(bound, max(region_sides), "hypercube", "longest side")
    _require_bound(PowerBound(4, Fraction(len(s))), q, "hypercube", "q")
    require_valid(scaled)
    sections = verify_by_sections(scaled, (i, j))

    cert = ScalingCertificate(
        pipeline="hypercube",
        q=q,
        bound=bound,
        factor=factor,
        scaled=scaled,
        integer_sides=sides,
        coordinate_set=s,
        dirichlet_bound=result.bound,
        axes=(i, j),
        notes=[f"strategy={strategy}", f"sections_verified={sections}"],
    )
    _log_certificate(cert)
    return cert


def _shape_factor(tiling: CuboidTiling, i: int, j: int) -> int:
    return math.prod(max(t.shape[i], t.shape[j]) for t in tiling.tiles)


def integerize_hypercuboid_tiling(tiling: CuboidTiling, engine: Optional[ApproximationEnginePort] = None) -> ScalingCertificate:
    engine = engine or DirichletEngine()
    require_valid(tiling)
    for k, tile in enumerate(tiling.tiles):
        if tile.shape is None:
            raise PreconditionViolation("every tile needs a shape vector", key="error_missing_shape", tile=k)
    n, d = len(tiling.tiles), tiling.dim
    i = _longest_axis(tiling.region)
    sizes = [len(axis_coordinates(tiling, k)) for k in range(d)]
    j = min((k for k in range(d) if k != i), key=lambda k: (_shape_factor(tiling, i, k), sizes[k], k))

    base = 1 / tiling.region.sides[i]
    normalized = _box_origin_scale(tiling, base)
    s0 = _without(axis_coordinates(normalized, i) + axis_coordinates(normalized, j))
    groups = [ApproxGroup(frozenset(s0), 4)]
    for tile in normalized.tiles:
        groups.append(ApproxGroup(frozenset({tile.sides[i] / tile.shape[i]}), 2 * max(tile.shape[i], tile.shape[j])))
    result = engine.dirichlet_varied(ApproxRequest(tuple(groups)))
    q = result.q

    factor = q * base
    scaled = _box_origin_scale(tiling, factor)
    sides = []
    for k, tile in enumerate(scaled.tiles):
        multiple = tile.sides[0] / tile.shape[0]
        if not is_integer(multiple) or any(side != multiple * m for side, m in zip(tile.sides, tile.shape)):
            raise TheoremViolation(
                "scaled tile is not an integer multiple of its shape",
                pipeline="hypercuboid",
                tile=k,
                sides=[format_rational(v) for v in tile.sides],
                shape=list(tile.shape),
            )
        sides.append([int(v) for v in tile.sides])
    bound = PowerBound(8, Fraction(n), Fraction(_shape_factor(tiling, i, j)))
    _require_bound(bound, q, "hypercuboid", "q")
    require_valid(scaled)

    cert = ScalingCertificate(
        pipeline="hypercuboid",
        q=q,
        bound=bound,
        factor=factor,
        scaled=scaled,
        integer_sides=sides,
        coordinate_set=s0,
        dirichlet_bound=result.bound,
        axes=(i, j),
    )
    _log_certificate(cert)
    return cert


# --- Triangle pipelines -----------------------------------------------------------


def _triangle_core(tiling: TriTiling, engine: ApproximationEnginePort):
    """Normalize, pick the rotation and run Dirichlet. Returns (q, rotation report, factor, offset, dirichlet bound)."""
    normalized, base, offset = normalize_triangle(tiling)
    rotation = tri_best_rotation(normalized)
    if not rotation.passed:
        raise TheoremViolation(
            "rotation coordinate count exceeds (2n-2)/3",
            count=len(rotation.coordinates),
            bound=format_rational(rotation.bound),
        )
    result = engine.dirichlet(rotation.coordinates, 4)
    return result.q, rotation, base, offset, result.bound


def _tri_sides(scaled: TriTiling, pipeline: str) -> List[int]:
    return [_integral(t.side, pipeline, tile=k) for k, t in enumerate(scaled.tiles)]


def integerize_triangle_tiling(tiling: TriTiling, engine: Optional[ApproximationEnginePort] = None) -> ScalingCertificate:
    engine = engine or DirichletEngine()
    if not isinstance(tiling.region, TriangleRegion):
        raise PreconditionViolation(
            "triangle pipeline needs a triangle region", key="error_region_kind", kind=tiling.region.kind
        )
    require_valid(tiling)
    n = len(tiling.tiles)
    q, rotation, base, offset, dirichlet_bound = _triangle_core(tiling, engine)

    factor = q * base
    scaled = scale_translate(tiling, factor, (q * offset[0], q * offset[1]))
    sides = _tri_sides(scaled, "triangle")
    bound = PowerBound(4, Fraction(2 * n - 2, 3))
    _require_bound(bound, q, "triangle", "q")
    require_valid(scaled)

    cert = ScalingCertificate(
        pipeline="triangle",
        q=q,
        bound=bound,
        factor=factor,
        scaled=scaled,
        integer_sides=sides,
        coordinate_set=rotation.coordinates,
        dirichlet_bound=dirichlet_bound,
        rotation=rotation.rotation,
    )
    _log_certificate(cert)
    return cert


def integerize_trapezoid_or_parallelogram(
    tiling: TriTiling, engine: Optional[ApproximationEnginePort] = None
) -> ScalingCertificate:
    """
    Complete the region to its enclosing triangle, integerize that, and
    return the input tiles only. `q` is the enclosing triangle's scaled
    side; `factor` is the scale applied to the input.
    """
    engine = engine or DirichletEngine()
    region = tiling.region
    if not isinstance(region, (TrapezoidRegion, ParallelogramRegion)):
        raise PreconditionViolation(
            "expected a trapezoid or parallelogram region", key="error_region_kind", kind=region.kind
        )
    require_valid(tiling)
    n = len(tiling.tiles)
    augmented, added = augment_to_triangle(tiling)
    require_valid(augmented)
    q, rotation, base, offset, dirichlet_bound = _triangle_core(augmented, engine)

    factor = q * base
    scaled = scale_translate(tiling, factor, (q * offset[0], q * offset[1]))
    sides = _tri_sides(scaled, region.kind)
    if isinstance(region, TrapezoidRegion):
        bound = PowerBound(4, Fraction(2 * n, 3))
    else:
        bound = PowerBound(4, Fraction(2 * n + 2, 3))
    _require_bound(bound, q, region.kind, "enclosing side")
    _require_bound(bound, scaled.region.longest_side, region.kind, "longest side")
    require_valid(scaled)

    cert = ScalingCertificate(
        pipeline=region.kind,
        q=q,
        bound=bound,
        factor=factor,
        scaled=scaled,
        integer_sides=sides,
        coordinate_set=rotation.coordinates,
        dirichlet_bound=dirichlet_bound,
        rotation=rotation.rotation,
        notes=[f"augmented_tiles={added}"],
    )
    _log_certificate(cert)
    return cert


# --- Dispatch -----------------------------------------------------------------------


class DirichletScalingEngine(ScalingEnginePort):
    """Selects the pipeline by tiling family and annotations."""

    def __init__(self, engine: Optional[ApproximationEnginePort] = None, hypercube_strategy: str = "best_pair"):
        self._engine = engine or DirichletEngine()
        self._strategy = hypercube_strategy

    def integerize(self, tiling: Tiling) -> ScalingCertificate:
        if isinstance(tiling, RectTiling):
            if tiling.has_ratios:
                cert = integerize_rect_tiling(tiling, self._engine)
                if tiling.is_square_tiling:
                    square_q = integerize_square_tiling(tiling, self._engine).q
                    cert.notes.append(f"square_pipeline_q={square_q}")
                return cert
            if tiling.is_square_tiling:
                return integerize_square_tiling(tiling, self._engine)
            raise PreconditionViolation("non-square tiles need declared ratios", key="error_missing_ratio")
        if isinstance(tiling, CuboidTiling):
            if tiling.has_shapes:
                return integerize_hypercuboid_tiling(tiling, self._engine)
            if tiling.is_cube_tiling:
                return integerize_hypercube_tiling(tiling, self._engine, self._strategy)
            raise PreconditionViolation("non-cube tiles need shape vectors", key="error_missing_shape")
        if isinstance(tiling.region, TriangleRegion):
            return integerize_triangle_tiling(tiling, self._engine)
        return integerize_trapezoid_or_parallelogram(tiling, self._engine)
