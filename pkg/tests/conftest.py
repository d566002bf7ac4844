# path: tests/conftest.py
# description: Shared fixtures: small hand-checked tilings and an explicit Settings.

from fractions import Fraction as F

import pytest

from src.domain.tiling_model import (
    UNIT_TRIANGLE,
    Cuboid,
    CuboidTiling,
    ParallelogramRegion,
    RectRegion,
    RectTile,
    RectTiling,
    TrapezoidRegion,
    TriTile,
    TriTiling,
)
from src.infrastructure.settings import Settings


@pytest.fixture
def settings():
    return Settings()


@pytest.fixture
def unit_square():
    return RectTiling(RectRegion(0, 1, 0, 1), (RectTile(0, 1, 0, 1),))


@pytest.fixture
def fibonacci_2x3():
    """Region [0,2]x[0,3]: the 2-square at the bottom, two unit squares on top."""
    return RectTiling(
        RectRegion(0, 2, 0, 3),
        (RectTile(0, 1, 2, 3), RectTile(1, 2, 2, 3), RectTile(0, 2, 0, 2)),
    )


@pytest.fixture
def ratio_cut():
    """Unit square cut at x = 1/3: ratios 3:1 and 3:2 (height:width)."""
    return RectTiling(
        RectRegion(0, 1, 0, 1),
        (RectTile(0, F(1, 3), 0, 1, ratio=(3, 1)), RectTile(F(1, 3), 1, 0, 1, ratio=(3, 2))),
    )


@pytest.fixture
def half_cubes():
    """Unit 3-cube split into eight 1/2-cubes."""
    h = F(1, 2)
    tiles = []
    for x in (0, h):
        for y in (0, h):
            for z in (0, h):
                tiles.append(Cuboid((x, y, z), (x + h, y + h, z + h)))
    return CuboidTiling(Cuboid((0, 0, 0), (1, 1, 1)), tuple(tiles))


@pytest.fixture
def four_split():
    h = F(1, 2)
    return TriTiling(UNIT_TRIANGLE, (TriTile(0, 0, h), TriTile(h, 0, h), TriTile(0, h, h), TriTile(h, h, -h)))


@pytest.fixture
def half_trapezoid():
    """T(0,0,1) below height 1/2, three half-size tiles."""
    h = F(1, 2)
    return TriTiling(TrapezoidRegion(0, 0, 1, h, h), (TriTile(0, 0, h), TriTile(h, 0, h), TriTile(h, h, -h)))


@pytest.fixture
def wide_parallelogram():
    """p = 2, q = 1 tiled by four unit triangles."""
    return TriTiling(
        ParallelogramRegion(0, 0, 2, 1),
        (TriTile(0, 0, 1), TriTile(1, 1, -1), TriTile(1, 0, 1), TriTile(2, 1, -1)),
    )
