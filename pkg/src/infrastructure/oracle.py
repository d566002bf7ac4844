# path: src/infrastructure/oracle.py
# description: Brute-Force Reference Oracles v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'OraclePort'. Two independent answers the pipelines are
# confronted with:
#   - the exact minimal integerizing scale of a tiling (lcm/gcd over sides),
#   - the exact minimal number of integer squares tiling a p x q rectangle
#     (exhaustive skyline search), plus the audits tying that count to the
#     4^n scaling bound.
#
# The search never reports a count it has not proven minimal: running into
# the node guard yields status "node_limit" instead of a best-effort answer.

import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

from src.domain.exact_numeric import PowerBound, Rat, format_rational, is_integer, rational_group_generator
from src.domain.exceptions import PreconditionViolation, TheoremViolation
from src.domain.ports import BoundAudit, OraclePort, QuiltResult, ScalingCertificate
from src.domain.tiling_model import (
    CuboidTiling,
    RectRegion,
    RectTile,
    RectTiling,
    Tiling,
    normalize_rect,
    scale_translate,
    side_lengths,
)
from src.infrastructure.settings import Settings, load_settings
from src.infrastructure.validator import require_valid

logger = logging.getLogger(__name__)

Square = Tuple[int, int, int]  # (x, y, side)


# --- Minimal integerizing scale -----------------------------------------------


def _flat_sides(tiling: Tiling) -> List[Rat]:
    values: List[Rat] = []
    for side in side_lengths(tiling):
        if isinstance(side, tuple):
            values.extend(side)
        else:
            values.append(side)
    return values


def minimal_scale_oracle(tiling: Tiling) -> Rat:
    """Smallest positive lam such that lam times every tile side is an integer."""
    require_valid(tiling)
    return rational_group_generator(_flat_sides(tiling))


def _region_longest_side(tiling: Tiling) -> Rat:
    if isinstance(tiling, RectTiling):
        return max(tiling.region.width, tiling.region.height)
    if isinstance(tiling, CuboidTiling):
        return max(tiling.region.sides)
    region = tiling.region
    # parallelograms normalize through their enclosing triangle, side p + q
    return region.p + region.q if region.kind == "parallelogram" else region.longest_side


def _origin_of(tiling: Tiling) -> Tuple[Rat, ...]:
    if isinstance(tiling, RectTiling):
        return (tiling.region.x0, tiling.region.y0)
    if isinstance(tiling, CuboidTiling):
        return tiling.region.lo
    return (tiling.region.A, tiling.region.B)


def oracle_certificate(tiling: Tiling) -> ScalingCertificate:
    """
    Certificate for the oracle scale. `factor` is lam_min of the input;
    `q` is the same scale seen from the normalized tiling (longest region
    side 1), comparable with the Dirichlet pipelines' q.
    """
    lam = minimal_scale_oracle(tiling)
    normalized_scale = lam * _region_longest_side(tiling)
    scaled = scale_translate(tiling, lam, tuple(-lam * v for v in _origin_of(tiling)))
    require_valid(scaled)
    sides = []
    for side in side_lengths(scaled):
        sides.append([int(v) for v in side] if isinstance(side, tuple) else int(side))
    q: Any = int(normalized_scale) if is_integer(normalized_scale) else normalized_scale
    cert = ScalingCertificate(
        pipeline="oracle",
        q=q,
        bound=None,
        factor=lam,
        scaled=scaled,
        integer_sides=sides,
        notes=[f"lambda_min={format_rational(lam)}"],
    )
    logger.info("SEARCH_SYS: oracle scale lambda=%s normalized=%s", format_rational(lam), format_rational(normalized_scale))
    return cert


# --- Exhaustive minimal square count ------------------------------------------------


def _euclid_squares(width: int, height: int) -> List[Square]:
    """Greedy tiling cutting the largest square off the current rectangle."""
    squares: List[Square] = []
    x, y, w, h = 0, 0, width, height
    while w and h:
        side = min(w, h)
        if w >= h:
            for k in range(w // h):
                squares.append((x + k * side, y, side))
            x += (w // h) * side
            w %= h
        else:
            for k in range(h // w):
                squares.append((x, y + k * side, side))
            y += (h // w) * side
            h %= w
    return squares


def _quilt(width: int, height: int, squares: List[Square]) -> RectTiling:
    return RectTiling(
        RectRegion(0, width, 0, height),
        tuple(RectTile(x, x + s, y, y + s) for x, y, s in squares),
    )


class _NodeLimit(Exception):
    pass


class _SkylineSearch:
    """
    Depth-first placement on a column skyline. Each step fills the lowest,
    then leftmost, empty cell with a square, largest side first.
    """

    def __init__(self, width: int, height: int, cutoff: int, node_limit: int):
        self.width = width
        self.height = height
        self.best = cutoff
        self.best_squares: Optional[List[Square]] = None
        self.nodes = 0
        self.node_limit = node_limit
        self.largest_area = min(width, height) ** 2
        self.heights = [0] * width
        self.placed: List[Square] = []

    def run(self) -> None:
        self._step(self.width * self.height)

    def _step(self, remaining: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise _NodeLimit()
        if remaining == 0:
            self.best = len(self.placed)
            self.best_squares = list(self.placed)
            return
        if len(self.placed) + -(-remaining // self.largest_area) >= self.best:
            return
        level = min(self.heights)
        x = self.heights.index(level)
        gap = 0
        while x + gap < self.width and self.heights[x + gap] == level:
            gap += 1
        for side in range(min(gap, self.height - level), 0, -1):
            for k in range(x, x + side):
                self.heights[k] = level + side
            self.placed.append((x, level, side))
            self._step(remaining - side * side)
            self.placed.pop()
            for k in range(x, x + side):
                self.heights[k] = level
            if len(self.placed) + 1 >= self.best:
                return


def min_squares_exhaustive(
    width: int, height: int, max_tiles: Optional[int] = None, settings: Optional[Settings] = None
) -> QuiltResult:
    """Minimal number of integer squares tiling width x height, with a witness."""
    if width < 1 or height < 1:
        raise PreconditionViolation("rectangle sides must be positive integers", key="error_non_positive_value", width=width, height=height)
    settings = settings or load_settings()
    greedy = _euclid_squares(width, height)
    greedy_allowed = max_tiles is None or len(greedy) <= max_tiles
    # the search only reports counts strictly below its cutoff
    cutoff = len(greedy) if greedy_allowed else max_tiles + 1
    search = _SkylineSearch(width, height, cutoff, settings.search_node_limit)
    try:
        search.run()
    except _NodeLimit:
        logger.warning("SEARCH_SYS: node limit %d reached for %dx%d", settings.search_node_limit, width, height)
        return QuiltResult(width=width, height=height, status="node_limit", nodes=search.nodes)

    squares = search.best_squares
    if squares is None and greedy_allowed:
        squares = greedy
    if squares is None:
        logger.info("SEARCH_SYS: %dx%d needs more than %d squares nodes=%d", width, height, max_tiles, search.nodes)
        return QuiltResult(width=width, height=height, status="exceeds_max_tiles", nodes=search.nodes)

    witness = _quilt(width, height, squares)
    require_valid(witness)
    logger.info("SEARCH_SYS: %dx%d minimum=%d nodes=%d", width, height, len(squares), search.nodes)
    return QuiltResult(width=width, height=height, status="optimal", count=len(squares), witness=witness, nodes=search.nodes)


# --- Audits ---------------------------------------------------------------------------


def bound_audit(width: int, height: int, tiles: int) -> BoundAudit:
    """4^n >= max(p, q) for a coprime p x q rectangle tiled by n squares. Conway's 2^n is reference only."""
    if math.gcd(width, height) != 1:
        raise PreconditionViolation("audit needs coprime sides", key="error_not_coprime", width=width, height=height)
    longest = max(width, height)
    holds = PowerBound(4, Fraction(tiles)).admits(longest)
    audit = BoundAudit(
        width=width,
        height=height,
        tiles=tiles,
        holds=holds,
        reference={"conway_2^n": PowerBound(2, Fraction(tiles)).admits(longest)},
    )
    if not holds:
        raise TheoremViolation("square count below log4 of the longest side", width=width, height=height, tiles=tiles)
    return audit


def denominator_audit(tiling: RectTiling) -> Dict[str, Any]:
    """
    With the longest region side scaled to 1: the common denominator of the
    square sizes and the ratio longest side / smallest square are both at
    most 4^n.
    """
    if not tiling.is_square_tiling:
        raise PreconditionViolation("denominator audit needs square tiles", key="error_not_square")
    require_valid(tiling)
    normalized = normalize_rect(tiling)
    sizes = [tile.width for tile in normalized.tiles]
    n = len(sizes)
    denominator_lcm = reduce(math.lcm, (s.denominator for s in sizes), 1)
    spread = 1 / min(sizes)
    bound = PowerBound(4, Fraction(n))
    report = {
        "tiles": n,
        "denominator_lcm": denominator_lcm,
        "side_ratio": format_rational(spread),
        "bound": str(bound),
        "holds": bound.admits(denominator_lcm) and bound.admits(spread),
    }
    if not report["holds"]:
        raise TheoremViolation("square sizes exceed the 4^n scale bound", **report)
    return report


def multiple_horizon(width: int, height: int, tiles: int) -> List[int]:
    """Every k with k * max(p, q) <= 4^n; beyond it no multiple can use n squares."""
    limit = 4 ** tiles // max(width, height)
    return list(range(1, limit + 1))


def multiple_stability_check(
    width: int, height: int, k_cap: int, max_tiles: Optional[int] = None, settings: Optional[Settings] = None
) -> Dict[int, QuiltResult]:
    """f(kp, kq) for k inside the horizon (at most k_cap values), each asserted <= f(p, q)."""
    base = min_squares_exhaustive(width, height, max_tiles, settings)
    if not base.exact:
        raise PreconditionViolation("base rectangle has no exact minimum", key="error_search_incomplete", status=base.status)
    results: Dict[int, QuiltResult] = {}
    for k in multiple_horizon(width, height, base.count)[:k_cap]:
        result = min_squares_exhaustive(k * width, k * height, base.count, settings)
        if result.status == "exceeds_max_tiles":
            raise TheoremViolation("scaled rectangle needs more squares than the original", k=k, base=base.count)
        results[k] = result
    return results


class BruteForceOracle(OraclePort):
    def __init__(self, settings: Optional[Settings] = None):
        self._settings = settings or load_settings()

    def minimal_scale(self, tiling: Tiling) -> Rat:
        return minimal_scale_oracle(tiling)

    def certificate(self, tiling: Tiling) -> ScalingCertificate:
        return oracle_certificate(tiling)

    def min_squares(self, width: int, height: int, max_tiles: Optional[int] = None) -> QuiltResult:
        return min_squares_exhaustive(width, height, max_tiles, self._settings)

    def audit(self, width: int, height: int, tiles: int) -> BoundAudit:
        return bound_audit(width, height, tiles)

    def horizon(self, width: int, height: int, tiles: int) -> List[int]:
        return multiple_horizon(width, height, tiles)
