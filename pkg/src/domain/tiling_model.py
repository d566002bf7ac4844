# path: src/domain/tiling_model.py
# description: Tiling Entities & Exact Geometric Transforms v1.0.
#
# ARCHITECTURAL ROLE (Domain Core):
# Immutable value objects for the three tiling families:
#   - RectTiling    axis-parallel rectangles / squares in the plane,
#   - CuboidTiling  axis-parallel hypercuboids / hypercubes in R^d,
#   - TriTiling     equilateral triangles in oblique (Psi) coordinates.
# Constructors enforce per-object invariants only (x0 < x1, c != 0, ...).
# Relations between tiles (containment, overlap, measure) are the
# validator's job, so a broken tile set can still be built and reported on.
#
# Psi-coordinates: Psi(a, b) = a*(1, 0) + b*(1/2, sqrt(3)/2). The tile
# T(a, b, c) has vertices Psi(a, b), Psi(a+c, b), Psi(a, b+c); c < 0 is a
# downward triangle. With s = u + v, an up tile is {u >= a, v >= b,
# s <= a+b+c} and a down tile the reversed inequalities.

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from src.domain.exact_numeric import Rat, RatLike, as_rat, format_rational
from src.domain.exceptions import MalformedTilingError, PreconditionViolation

# Line classes of the triangular lattice: first Psi-coordinate constant,
# second Psi-coordinate constant, or their sum constant.
PSI_VERTICAL = "a"
HORIZONTAL = "b"
ANTI_DIAGONAL = "a+b"

Line = Tuple[str, Rat]
Hyperplane = Tuple[int, Rat]


def _coerce(obj, *names: str) -> None:
    for name in names:
        object.__setattr__(obj, name, as_rat(getattr(obj, name)))


# --- Rectangles -------------------------------------------------------------


@dataclass(frozen=True)
class RectRegion:
    x0: Rat
    x1: Rat
    y0: Rat
    y1: Rat

    def __post_init__(self):
        _coerce(self, "x0", "x1", "y0", "y1")
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise MalformedTilingError(
                "rectangle needs x0 < x1 and y0 < y1",
                box=[format_rational(v) for v in (self.x0, self.x1, self.y0, self.y1)],
            )

    @property
    def width(self) -> Rat:
        return self.x1 - self.x0

    @property
    def height(self) -> Rat:
        return self.y1 - self.y0

    @property
    def area(self) -> Rat:
        return self.width * self.height


@dataclass(frozen=True)
class RectTile(RectRegion):
    """
    A tile [x0,x1] x [y0,y1]. The optional declared ratio (p, q) means
    height : width = p : q (p belongs to the vertical side), stored in lowest terms.
    """

    ratio: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        super().__post_init__()
        if self.ratio is not None:
            p, q = (int(v) for v in self.ratio)
            if p <= 0 or q <= 0:
                raise MalformedTilingError("ratio entries must be positive", ratio=[p, q])
            if self.height * q != self.width * p:
                raise MalformedTilingError(
                    "tile sides are not in the declared ratio",
                    ratio=[p, q],
                    sides=[format_rational(self.width), format_rational(self.height)],
                )
            object.__setattr__(self, "ratio", _reduced(p, q))

    @property
    def is_square(self) -> bool:
        return self.width == self.height


@dataclass(frozen=True)
class RectTiling:
    region: RectRegion
    tiles: Tuple[RectTile, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))

    @property
    def kind(self) -> str:
        return "rect"

    @property
    def is_square_tiling(self) -> bool:
        return all(tile.is_square for tile in self.tiles)

    @property
    def has_ratios(self) -> bool:
        return bool(self.tiles) and all(tile.ratio is not None for tile in self.tiles)


# --- Hypercuboids -----------------------------------------------------------


@dataclass(frozen=True)
class Cuboid:
    """Axis-parallel box prod [lo[i], hi[i]]. `shape` is an optional integer proportion vector."""

    lo: Tuple[Rat, ...]
    hi: Tuple[Rat, ...]
    shape: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        lo = tuple(as_rat(v) for v in self.lo)
        hi = tuple(as_rat(v) for v in self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if len(lo) != len(hi) or len(lo) < 2:
            raise MalformedTilingError("cuboid needs matching lo/hi of dimension >= 2", dim=[len(lo), len(hi)])
        if any(l >= h for l, h in zip(lo, hi)):
            raise MalformedTilingError(
                "cuboid needs lo[i] < hi[i]",
                lo=[format_rational(v) for v in lo],
                hi=[format_rational(v) for v in hi],
            )
        if self.shape is not None:
            shape = tuple(int(v) for v in self.shape)
            if len(shape) != len(lo) or any(v <= 0 for v in shape):
                raise MalformedTilingError("shape must be a positive integer vector of length d", shape=list(shape))
            sides = self.sides
            # sides proportional to shape: side_k * shape_0 == side_0 * shape_k
            if any(sides[k] * shape[0] != sides[0] * shape[k] for k in range(len(shape))):
                raise MalformedTilingError(
                    "cuboid sides are not proportional to the declared shape",
                    shape=list(shape),
                    sides=[format_rational(s) for s in sides],
                )
            object.__setattr__(self, "shape", shape)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def sides(self) -> Tuple[Rat, ...]:
        return tuple(h - l for l, h in zip(self.lo, self.hi))

    @property
    def volume(self) -> Rat:
        return math.prod(self.sides, start=Fraction(1))

    @property
    def is_cube(self) -> bool:
        return len(set(self.sides)) == 1


@dataclass(frozen=True)
class CuboidTiling:
    region: Cuboid
    tiles: Tuple[Cuboid, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))

    @property
    def kind(self) -> str:
        return "cuboid"

    @property
    def dim(self) -> int:
        return self.region.dim

    @property
    def is_cube_tiling(self) -> bool:
        return all(tile.is_cube for tile in self.tiles)

    @property
    def has_shapes(self) -> bool:
        return bool(self.tiles) and all(tile.shape is not None for tile in self.tiles)


# --- Triangles --------------------------------------------------------------


@dataclass(frozen=True)
class PsiBounds:
    """
    Convex set {u_lo <= u <= u_hi, v_lo <= v <= v_hi, s_lo <= u+v <= s_hi}
    in Psi-coordinates. None means unbounded on that side.
    """

    u_lo: Optional[Rat] = None
    u_hi: Optional[Rat] = None
    v_lo: Optional[Rat] = None
    v_hi: Optional[Rat] = None
    s_lo: Optional[Rat] = None
    s_hi: Optional[Rat] = None

    def contains(self, u: Rat, v: Rat) -> bool:
        s = u + v
        return (
            (self.u_lo is None or u >= self.u_lo)
            and (self.u_hi is None or u <= self.u_hi)
            and (self.v_lo is None or v >= self.v_lo)
            and (self.v_hi is None or v <= self.v_hi)
            and (self.s_lo is None or s >= self.s_lo)
            and (self.s_hi is None or s <= self.s_hi)
        )

    def interiors_overlap(self, other: "PsiBounds") -> bool:
        """
        Whether the open interiors intersect: the conjunction of the strict
        constraints of both sets is satisfiable. The open (u, v) box reaches
        exactly the sums in (u_lo + v_lo, u_hi + v_hi), so the system is
        feasible iff each interval is nonempty and that sum range meets the
        s interval.
        """
        u_lo, u_hi = _tighter_lo(self.u_lo, other.u_lo), _tighter_hi(self.u_hi, other.u_hi)
        v_lo, v_hi = _tighter_lo(self.v_lo, other.v_lo), _tighter_hi(self.v_hi, other.v_hi)
        s_lo, s_hi = _tighter_lo(self.s_lo, other.s_lo), _tighter_hi(self.s_hi, other.s_hi)
        if not (_below(u_lo, u_hi) and _below(v_lo, v_hi) and _below(s_lo, s_hi)):
            return False
        reach_lo = None if u_lo is None or v_lo is None else u_lo + v_lo
        reach_hi = None if u_hi is None or v_hi is None else u_hi + v_hi
        return _below(_tighter_lo(reach_lo, s_lo), _tighter_hi(reach_hi, s_hi))


def _tighter_lo(a: Optional[Rat], b: Optional[Rat]) -> Optional[Rat]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _tighter_hi(a: Optional[Rat], b: Optional[Rat]) -> Optional[Rat]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _below(lo: Optional[Rat], hi: Optional[Rat]) -> bool:
    return lo is None or hi is None or lo < hi


@dataclass(frozen=True)
class TriTile:
    a: Rat
    b: Rat
    c: Rat

    def __post_init__(self):
        _coerce(self, "a", "b", "c")
        if self.c == 0:
            raise MalformedTilingError("triangle tile needs c != 0", a=format_rational(self.a), b=format_rational(self.b))

    @property
    def side(self) -> Rat:
        return abs(self.c)

    @property
    def is_up(self) -> bool:
        return self.c > 0

    @property
    def psi_area(self) -> Rat:
        return self.c * self.c / 2

    @property
    def vertices(self) -> Tuple[Tuple[Rat, Rat], ...]:
        a, b, c = self.a, self.b, self.c
        return ((a, b), (a + c, b), (a, b + c))

    @property
    def edge_lines(self) -> Tuple[Line, ...]:
        return ((HORIZONTAL, self.b), (PSI_VERTICAL, self.a), (ANTI_DIAGONAL, self.a + self.b + self.c))

    def bounds(self) -> PsiBounds:
        a, b, s = self.a, self.b, self.a + self.b + self.c
        if self.is_up:
            return PsiBounds(u_lo=a, v_lo=b, s_hi=s)
        return PsiBounds(u_hi=a, v_hi=b, s_lo=s)


@dataclass(frozen=True)
class TriangleRegion:
    """The up-triangle T(A, B, C), C > 0."""

    A: Rat
    B: Rat
    C: Rat
    kind = "triangle"

    def __post_init__(self):
        _coerce(self, "A", "B", "C")
        if self.C <= 0:
            raise MalformedTilingError("triangle region needs C > 0", C=format_rational(self.C))

    @property
    def psi_area(self) -> Rat:
        return self.C * self.C / 2

    @property
    def height(self) -> Rat:
        return self.C

    @property
    def longest_side(self) -> Rat:
        return self.C

    def bounds(self) -> PsiBounds:
        return PsiBounds(u_lo=self.A, v_lo=self.B, s_hi=self.A + self.B + self.C)

    def boundary_lines(self) -> Tuple[Line, ...]:
        return ((PSI_VERTICAL, self.A), (HORIZONTAL, self.B), (ANTI_DIAGONAL, self.A + self.B + self.C))

    def vertices(self) -> Tuple[Tuple[Rat, Rat], ...]:
        return TriTile(self.A, self.B, self.C).vertices

    def mapped(self, factor: Rat, offset: Tuple[Rat, Rat]) -> "TriangleRegion":
        return TriangleRegion(factor * self.A + offset[0], factor * self.B + offset[1], factor * self.C)


@dataclass(frozen=True)
class TrapezoidRegion:
    """
    Frustum of an up-triangle: bottom side [A, A+base] at height B, top side
    [A, A+top] at height B+height, legs along the two non-horizontal lattice
    directions, hence base == top + height.
    """

    A: Rat
    B: Rat
    base: Rat
    top: Rat
    height: Rat
    kind = "trapezoid"

    def __post_init__(self):
        _coerce(self, "A", "B", "base", "top", "height")
        if not (self.top > 0 and self.height > 0):
            raise MalformedTilingError("trapezoid needs positive top and height")
        if self.base != self.top + self.height:
            raise MalformedTilingError(
                "trapezoid legs must be at 60 degrees (base == top + height)",
                base=format_rational(self.base),
                top=format_rational(self.top),
                height=format_rational(self.height),
            )

    @property
    def psi_area(self) -> Rat:
        return (self.base * self.base - self.top * self.top) / 2

    @property
    def longest_side(self) -> Rat:
        return self.base

    def bounds(self) -> PsiBounds:
        return PsiBounds(u_lo=self.A, v_lo=self.B, v_hi=self.B + self.height, s_hi=self.A + self.B + self.base)

    def boundary_lines(self) -> Tuple[Line, ...]:
        return (
            (PSI_VERTICAL, self.A),
            (HORIZONTAL, self.B),
            (HORIZONTAL, self.B + self.height),
            (ANTI_DIAGONAL, self.A + self.B + self.base),
        )

    def vertices(self) -> Tuple[Tuple[Rat, Rat], ...]:
        top_y = self.B + self.height
        return ((self.A, self.B), (self.A + self.base, self.B), (self.A + self.top, top_y), (self.A, top_y))

    def mapped(self, factor: Rat, offset: Tuple[Rat, Rat]) -> "TrapezoidRegion":
        return TrapezoidRegion(
            factor * self.A + offset[0], factor * self.B + offset[1], factor * self.base, factor * self.top, factor * self.height
        )


@dataclass(frozen=True)
class ParallelogramRegion:
    """{A <= u <= A+p, B <= v <= B+q}: sides along the two Psi basis directions."""

    A: Rat
    B: Rat
    p: Rat
    q: Rat
    kind = "parallelogram"

    def __post_init__(self):
        _coerce(self, "A", "B", "p", "q")
        if not (self.p > 0 and self.q > 0):
            raise MalformedTilingError("parallelogram needs p > 0 and q > 0")

    @property
    def psi_area(self) -> Rat:
        return self.p * self.q

    @property
    def height(self) -> Rat:
        return self.q

    @property
    def longest_side(self) -> Rat:
        return max(self.p, self.q)

    def bounds(self) -> PsiBounds:
        return PsiBounds(u_lo=self.A, u_hi=self.A + self.p, v_lo=self.B, v_hi=self.B + self.q)

    def boundary_lines(self) -> Tuple[Line, ...]:
        return (
            (PSI_VERTICAL, self.A),
            (PSI_VERTICAL, self.A + self.p),
            (HORIZONTAL, self.B),
            (HORIZONTAL, self.B + self.q),
        )

    def vertices(self) -> Tuple[Tuple[Rat, Rat], ...]:
        A, B, p, q = self.A, self.B, self.p, self.q
        return ((A, B), (A + p, B), (A + p, B + q), (A, B + q))

    def mapped(self, factor: Rat, offset: Tuple[Rat, Rat]) -> "ParallelogramRegion":
        return ParallelogramRegion(factor * self.A + offset[0], factor * self.B + offset[1], factor * self.p, factor * self.q)


TriRegion = Union[TriangleRegion, TrapezoidRegion, ParallelogramRegion]


@dataclass(frozen=True)
class TriTiling:
    region: TriRegion
    tiles: Tuple[TriTile, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))

    @property
    def kind(self) -> str:
        return "triangle"


Tiling = Union[RectTiling, CuboidTiling, TriTiling]


# --- Operations -------------------------------------------------------------


def tile_count(tiling: Tiling) -> int:
    return len(tiling.tiles)


def side_lengths(tiling: Tiling) -> List[Union[Rat, Tuple[Rat, ...]]]:
    """
    Per-tile side lengths: a single value for squares, cubes and triangles
    (|c|, in Psi units), the full side vector otherwise.
    """
    if isinstance(tiling, TriTiling):
        return [tile.side for tile in tiling.tiles]
    if isinstance(tiling, RectTiling):
        return [tile.width if tile.is_square else (tile.width, tile.height) for tile in tiling.tiles]
    return [tile.sides[0] if tile.is_cube else tile.sides for tile in tiling.tiles]


def region_dimensions(tiling: Tiling) -> Tuple[Rat, ...]:
    if isinstance(tiling, RectTiling):
        return (tiling.region.width, tiling.region.height)
    if isinstance(tiling, CuboidTiling):
        return tiling.region.sides
    region = tiling.region
    if isinstance(region, TriangleRegion):
        return (region.C,)
    if isinstance(region, TrapezoidRegion):
        return (region.base, region.top, region.height)
    return (region.p, region.q)


def scale_translate(tiling: Tiling, factor: RatLike, offset: Optional[Sequence[RatLike]] = None) -> Tiling:
    """Apply x -> factor * x + offset to every coordinate."""
    factor = as_rat(factor)
    if factor <= 0:
        raise PreconditionViolation("scale factor must be positive", key="error_non_positive_factor", factor=format_rational(factor))

    if isinstance(tiling, RectTiling):
        ox, oy = _offset(offset, 2)

        def rect(r, cls=RectTile):
            kwargs = {"ratio": r.ratio} if isinstance(r, RectTile) else {}
            return cls(factor * r.x0 + ox, factor * r.x1 + ox, factor * r.y0 + oy, factor * r.y1 + oy, **kwargs)

        return RectTiling(rect(tiling.region, RectRegion), tuple(rect(t) for t in tiling.tiles))

    if isinstance(tiling, CuboidTiling):
        shift = _offset(offset, tiling.dim)

        def box(c: Cuboid) -> Cuboid:
            return Cuboid(
                tuple(factor * v + o for v, o in zip(c.lo, shift)),
                tuple(factor * v + o for v, o in zip(c.hi, shift)),
                c.shape,
            )

        return CuboidTiling(box(tiling.region), tuple(box(t) for t in tiling.tiles))

    oa, ob = _offset(offset, 2)
    return TriTiling(
        tiling.region.mapped(factor, (oa, ob)),
        tuple(TriTile(factor * t.a + oa, factor * t.b + ob, factor * t.c) for t in tiling.tiles),
    )


def _offset(offset: Optional[Sequence[RatLike]], dim: int) -> Tuple[Rat, ...]:
    if offset is None:
        return (Fraction(0),) * dim
    values = tuple(as_rat(v) for v in offset)
    if len(values) != dim:
        raise PreconditionViolation("offset has the wrong dimension", key="error_dimension_mismatch", expected=dim, got=len(values))
    return values


def transpose_rect(tiling: RectTiling) -> RectTiling:
    """Swap the x and y axes; declared ratios swap with them."""

    def flip(r, cls=RectTile):
        if isinstance(r, RectTile):
            ratio = None if r.ratio is None else (r.ratio[1], r.ratio[0])
            return cls(r.y0, r.y1, r.x0, r.x1, ratio=ratio)
        return cls(r.y0, r.y1, r.x0, r.x1)

    return RectTiling(flip(tiling.region, RectRegion), tuple(flip(t) for t in tiling.tiles))


def normalize_rect(tiling: RectTiling) -> RectTiling:
    """
    Bottom-left corner to the origin, longest side vertical (transpose only
    when the width is strictly larger) and that side scaled to exactly 1.
    """
    region = tiling.region
    moved = scale_translate(tiling, 1, (-region.x0, -region.y0))
    if region.width > region.height:
        moved = transpose_rect(moved)
    return scale_translate(moved, 1 / moved.region.height)


def normalize_triangle(tiling: TriTiling) -> Tuple[TriTiling, Rat, Tuple[Rat, Rat]]:
    """Map a triangle-region tiling onto T(0,0,1). Returns (tiling, factor, offset)."""
    region = tiling.region
    if not isinstance(region, TriangleRegion):
        raise PreconditionViolation("expected a triangle region", key="error_region_kind", kind=region.kind)
    factor = 1 / region.C
    offset = (-factor * region.A, -factor * region.B)
    return scale_translate(tiling, factor, offset), factor, offset


UNIT_TRIANGLE = TriangleRegion(0, 0, 1)


def rotate_tri_120(tiling: TriTiling) -> TriTiling:
    """
    Rotation by 120 degrees about the centre of T(0,0,1): the affine map
    (a, b) -> (1 - a - b, a). It sends T(a, b, c) to T(1 - a - b - c, a, c),
    so up tiles stay up and the region is fixed setwise.
    """
    if tiling.region != UNIT_TRIANGLE:
        raise PreconditionViolation("rotation needs the region T(0,0,1)", key="error_not_normalized")
    return TriTiling(
        tiling.region,
        tuple(TriTile(1 - t.a - t.b - t.c, t.a, t.c) for t in tiling.tiles),
    )


def four_split(tile: TriTile) -> Tuple[TriTile, TriTile, TriTile, TriTile]:
    """Halve a triangle into three corner copies and one reversed centre copy."""
    h = tile.c / 2
    a, b = tile.a, tile.b
    return (TriTile(a, b, h), TriTile(a + h, b, h), TriTile(a, b + h, h), TriTile(a + h, b + h, -h))


def augment_to_triangle(tiling: TriTiling) -> Tuple[TriTiling, int]:
    """
    Complete a trapezoid (one apex tile) or parallelogram (right corner and
    apex tiles) to a tiling of the enclosing up-triangle. The added tiles are
    appended after the originals; returns (tiling, number added).
    """
    region = tiling.region
    if isinstance(region, TrapezoidRegion):
        extra = (TriTile(region.A, region.B + region.height, region.top),)
        enclosing = TriangleRegion(region.A, region.B, region.base)
    elif isinstance(region, ParallelogramRegion):
        extra = (
            TriTile(region.A + region.p, region.B, region.q),
            TriTile(region.A, region.B + region.q, region.p),
        )
        enclosing = TriangleRegion(region.A, region.B, region.p + region.q)
    else:
        raise PreconditionViolation(
            "only trapezoid and parallelogram regions are augmented", key="error_region_kind", kind=region.kind
        )
    return TriTiling(enclosing, tiling.tiles + extra), len(extra)


def with_tiles(tiling: Tiling, tiles: Sequence) -> Tiling:
    return replace(tiling, tiles=tuple(tiles))


def as_cuboid_tiling(tiling: RectTiling) -> CuboidTiling:
    """View a rectangle tiling as a 2-dimensional box tiling. Declared ratios p:q become shapes (q, p)."""

    def box(r, ratio=None):
        shape = None if ratio is None else (ratio[1], ratio[0])
        return Cuboid((r.x0, r.y0), (r.x1, r.y1), shape)

    return CuboidTiling(box(tiling.region), tuple(box(t, t.ratio) for t in tiling.tiles))


def as_rect_tiling(tiling: CuboidTiling) -> RectTiling:
    if tiling.dim != 2:
        raise PreconditionViolation("only 2-dimensional box tilings are rectangles", key="error_dimension_mismatch", dim=tiling.dim)

    def rect(c: Cuboid, cls=RectTile):
        if cls is RectRegion:
            return RectRegion(c.lo[0], c.hi[0], c.lo[1], c.hi[1])
        ratio = None if c.shape is None else _reduced(c.shape[1], c.shape[0])
        return RectTile(c.lo[0], c.hi[0], c.lo[1], c.hi[1], ratio=ratio)

    return RectTiling(rect(tiling.region, RectRegion), tuple(rect(t) for t in tiling.tiles))


def _reduced(p: int, q: int) -> Tuple[int, int]:
    g = math.gcd(p, q)
    return (p // g, q // g)
