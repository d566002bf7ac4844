# path: src/infrastructure/serialization.py
# description: JSON Exchange Schema v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'DocumentCodecPort'. Pydantic models mirror the tiling
# document and every report the CLI emits. Rationals travel as canonical
# "num/den" strings (integers as "num"), so nothing is ever rounded on the
# way in or out.
#
# Parse failures become DocumentParseError with a location: the JSON path
# from pydantic's `loc`, or line/column for malformed JSON text. Structural
# problems in well-formed documents (x0 >= x1, c == 0) surface as the
# domain's MalformedTilingError instead.

import json
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, PositiveInt, TypeAdapter, ValidationError

from src.domain.exact_numeric import as_rat, format_rational
from src.domain.exceptions import DocumentParseError
from src.domain.ports import (
    AxisPairReport,
    BoundAudit,
    CoordReport,
    CoverReport,
    DocumentCodecPort,
    QuiltResult,
    RotationReport,
    ScalingCertificate,
    ValidationReport,
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
)


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError("rationals must be strings of the form 'num/den' or integers")
    try:
        return as_rat(value)
    except DocumentParseError as exc:
        raise ValueError(str(exc)) from exc


Rational = Annotated[Fraction, BeforeValidator(_to_fraction), PlainSerializer(format_rational, return_type=str)]


class _Model(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")


# --- Tiling documents -------------------------------------------------------


class RectBox(_Model):
    x0: Rational
    x1: Rational
    y0: Rational
    y1: Rational


class RectTileDoc(RectBox):
    ratio: Optional[Tuple[PositiveInt, PositiveInt]] = None


class RectDocument(_Model):
    kind: Literal["rect"] = "rect"
    region: RectBox
    tiles: List[RectTileDoc]


class BoxDoc(_Model):
    lo: List[Rational]
    hi: List[Rational]
    shape: Optional[List[PositiveInt]] = None


class CuboidDocument(_Model):
    kind: Literal["cuboid"] = "cuboid"
    dim: PositiveInt
    region: BoxDoc
    tiles: List[BoxDoc]


class TriangleRegionDoc(_Model):
    kind: Literal["triangle"] = "triangle"
    A: Rational
    B: Rational
    C: Rational


class TrapezoidRegionDoc(_Model):
    kind: Literal["trapezoid"] = "trapezoid"
    A: Rational
    B: Rational
    base: Rational
    top: Rational
    height: Rational


class ParallelogramRegionDoc(_Model):
    kind: Literal["parallelogram"] = "parallelogram"
    A: Rational
    B: Rational
    p: Rational
    q: Rational


class TriTileDoc(_Model):
    a: Rational
    b: Rational
    c: Rational


class TriangleDocument(_Model):
    kind: Literal["triangle"] = "triangle"
    region: Annotated[Union[TriangleRegionDoc, TrapezoidRegionDoc, ParallelogramRegionDoc], Field(discriminator="kind")]
    tiles: List[TriTileDoc]


TilingDocument = Annotated[Union[RectDocument, CuboidDocument, TriangleDocument], Field(discriminator="kind")]
_DOCUMENT = TypeAdapter(TilingDocument)


def _dimension_mismatch(doc: CuboidDocument) -> Optional[str]:
    """Only the region is held to `dim`; tiles of another dimension are a validation finding."""
    if len(doc.region.lo) != doc.dim or len(doc.region.hi) != doc.dim:
        return "region"
    return None


def document_to_tiling(doc) -> Tiling:
    """Build the domain value. Constructors raise MalformedTilingError on broken tiles."""
    if isinstance(doc, RectDocument):
        r = doc.region
        return RectTiling(
            RectRegion(r.x0, r.x1, r.y0, r.y1),
            tuple(RectTile(t.x0, t.x1, t.y0, t.y1, ratio=t.ratio) for t in doc.tiles),
        )
    if isinstance(doc, CuboidDocument):
        where = _dimension_mismatch(doc)
        if where is not None:
            raise DocumentParseError("box dimension differs from 'dim'", location=where, dim=doc.dim)
        return CuboidTiling(
            Cuboid(tuple(doc.region.lo), tuple(doc.region.hi)),
            tuple(Cuboid(tuple(t.lo), tuple(t.hi), None if t.shape is None else tuple(t.shape)) for t in doc.tiles),
        )
    r = doc.region
    if isinstance(r, TriangleRegionDoc):
        region = TriangleRegion(r.A, r.B, r.C)
    elif isinstance(r, TrapezoidRegionDoc):
        region = TrapezoidRegion(r.A, r.B, r.base, r.top, r.height)
    else:
        region = ParallelogramRegion(r.A, r.B, r.p, r.q)
    return TriTiling(region, tuple(TriTile(t.a, t.b, t.c) for t in doc.tiles))


def tiling_to_document(tiling: Tiling):
    if isinstance(tiling, RectTiling):
        r = tiling.region
        return RectDocument(
            region=RectBox(x0=r.x0, x1=r.x1, y0=r.y0, y1=r.y1),
            tiles=[RectTileDoc(x0=t.x0, x1=t.x1, y0=t.y0, y1=t.y1, ratio=t.ratio) for t in tiling.tiles],
        )
    if isinstance(tiling, CuboidTiling):
        return CuboidDocument(
            dim=tiling.dim,
            region=BoxDoc(lo=list(tiling.region.lo), hi=list(tiling.region.hi)),
            tiles=[
                BoxDoc(lo=list(t.lo), hi=list(t.hi), shape=None if t.shape is None else list(t.shape)) for t in tiling.tiles
            ],
        )
    r = tiling.region
    if isinstance(r, TriangleRegion):
        region = TriangleRegionDoc(A=r.A, B=r.B, C=r.C)
    elif isinstance(r, TrapezoidRegion):
        region = TrapezoidRegionDoc(A=r.A, B=r.B, base=r.base, top=r.top, height=r.height)
    else:
        region = ParallelogramRegionDoc(A=r.A, B=r.B, p=r.p, q=r.q)
    return TriangleDocument(region=region, tiles=[TriTileDoc(a=t.a, b=t.b, c=t.c) for t in tiling.tiles])


def tiling_payload(tiling: Tiling) -> Dict[str, Any]:
    return tiling_to_document(tiling).model_dump(mode="json", exclude_none=True)


def _location(loc: Tuple) -> str:
    return ".".join(str(part) for part in loc)


def parse_document(raw: Any) -> Tiling:
    """Tiling from an already-decoded JSON value (a dict, as json.load returns it)."""
    try:
        doc = _DOCUMENT.validate_python(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise DocumentParseError(first["msg"], location=_location(first["loc"]), errors=exc.error_count()) from exc
    return document_to_tiling(doc)


class JsonTilingCodec(DocumentCodecPort):
    def loads(self, text: str) -> Tiling:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentParseError(exc.msg, location=f"line {exc.lineno} column {exc.colno}") from exc
        return parse_document(raw)

    def dumps(self, tiling: Tiling) -> str:
        return json.dumps(tiling_payload(tiling), indent=2)


def loads_tiling(text: str) -> Tiling:
    return JsonTilingCodec().loads(text)


def dumps_tiling(tiling: Tiling) -> str:
    return JsonTilingCodec().dumps(tiling)


# --- Report documents -------------------------------------------------------


class ValidationDoc(_Model):
    kind: str
    tile_count: int
    passed: bool
    containment: bool
    outside_tiles: List[int]
    disjoint: bool
    overlapping_pairs: List[Tuple[int, int]]
    measure_balanced: bool
    tile_measure: Rational
    region_measure: Rational
    structural: List[str]


class CoordDoc(_Model):
    kind: str
    tile_count: int
    coordinates: List[List[Rational]]
    counts: List[int]
    total: int
    bound: Rational
    reference_bound: Optional[Rational] = None
    passed: bool


class CoverDoc(_Model):
    kind: str
    tile_count: int
    members: List[Tuple[Union[int, str], Rational]]
    count: int
    bound: Rational
    passed: bool


class AxisPairDoc(_Model):
    axes: Tuple[int, int]
    count: int
    bound: Rational
    passed: bool


class RotationDoc(_Model):
    rotation: int
    coordinates: List[Rational]
    sizes: Tuple[int, int, int]
    bound: Rational
    passed: bool


class CertificateDoc(_Model):
    pipeline: str
    q: str
    bound: Optional[str] = None
    factor: Rational
    sides: List[Any]
    coordinate_set: List[Rational]
    dirichlet_bound: str
    rotation: Optional[int] = None
    axes: Optional[Tuple[int, int]] = None
    notes: List[str] = Field(default_factory=list)
    tiling: Dict[str, Any]


class QuiltDoc(_Model):
    width: int
    height: int
    status: str
    count: Optional[int] = None
    nodes: int
    witness: Optional[Dict[str, Any]] = None


class AuditDoc(_Model):
    width: int
    height: int
    tiles: int
    holds: bool
    reference: Dict[str, bool]


def report_payload(report: Any) -> Dict[str, Any]:
    """JSON-ready dict for any report or certificate DTO."""
    if isinstance(report, ValidationReport):
        doc = ValidationDoc(
            kind=report.kind,
            tile_count=report.tile_count,
            passed=report.passed,
            containment=report.containment,
            outside_tiles=report.outside_tiles,
            disjoint=report.disjoint,
            overlapping_pairs=report.overlapping_pairs,
            measure_balanced=report.measure_balanced,
            tile_measure=report.tile_measure,
            region_measure=report.region_measure,
            structural=report.structural,
        )
    elif isinstance(report, CoordReport):
        doc = CoordDoc(
            kind=report.kind,
            tile_count=report.tile_count,
            coordinates=[list(c) for c in report.coordinates],
            counts=list(report.counts),
            total=report.total,
            bound=report.bound,
            reference_bound=report.reference_bound,
            passed=report.passed,
        )
    elif isinstance(report, CoverReport):
        doc = CoverDoc(
            kind=report.kind,
            tile_count=report.tile_count,
            members=list(report.members),
            count=report.count,
            bound=report.bound,
            passed=report.passed,
        )
    elif isinstance(report, AxisPairReport):
        doc = AxisPairDoc(axes=(report.i, report.j), count=report.count, bound=report.bound, passed=report.passed)
    elif isinstance(report, RotationReport):
        doc = RotationDoc(
            rotation=report.rotation,
            coordinates=list(report.coordinates),
            sizes=report.sizes,
            bound=report.bound,
            passed=report.passed,
        )
    elif isinstance(report, ScalingCertificate):
        doc = CertificateDoc(
            pipeline=report.pipeline,
            q=str(report.q),
            bound=None if report.bound is None else str(report.bound),
            factor=report.factor,
            sides=report.integer_sides,
            coordinate_set=list(report.coordinate_set),
            dirichlet_bound=str(report.dirichlet_bound),
            rotation=report.rotation,
            axes=report.axes,
            notes=report.notes,
            tiling=tiling_payload(report.scaled),
        )
    elif isinstance(report, QuiltResult):
        doc = QuiltDoc(
            width=report.width,
            height=report.height,
            status=report.status,
            count=report.count,
            nodes=report.nodes,
            witness=None if report.witness is None else tiling_payload(report.witness),
        )
    elif isinstance(report, BoundAudit):
        doc = AuditDoc(width=report.width, height=report.height, tiles=report.tiles, holds=report.holds, reference=report.reference)
    else:
        raise TypeError(f"no document model for {type(report).__name__}")
    return doc.model_dump(mode="json")
