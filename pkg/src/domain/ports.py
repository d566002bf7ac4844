# path: src/domain/ports.py
# description: Domain Boundary Interfaces v1.0.
#
# ARCHITECTURAL ROLE (Hexagonal / DDD):
# Formal contracts between the application layer and the concrete engines.
# The use cases depend only on these ports; the infrastructure layer
# supplies the exact-arithmetic adapters. Report and certificate DTOs live
# here too, so every layer speaks the same vocabulary.

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.domain.exact_numeric import PowerBound, Rat
from src.domain.tiling_model import RectTiling, Tiling

# --- Validation --------------------------------------------------------------


@dataclass
class ValidationReport:
    """
    Exact partition certificate: containment, pairwise interior
    disjointness and measure balance together prove the tiles partition
    the region.
    """

    kind: str
    tile_count: int
    containment: bool = True
    outside_tiles: List[int] = field(default_factory=list)
    disjoint: bool = True
    overlapping_pairs: List[Tuple[int, int]] = field(default_factory=list)
    measure_balanced: bool = True
    tile_measure: Rat = Fraction(0)
    region_measure: Rat = Fraction(0)
    structural: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.structural and self.containment and self.disjoint and self.measure_balanced


# --- Coordinate analysis -----------------------------------------------------


@dataclass
class CoordReport:
    """Distinct vertex coordinates per direction and the counting bound they must respect."""

    kind: str
    tile_count: int
    coordinates: Tuple[Tuple[Rat, ...], ...]
    bound: Rat
    reference_bound: Optional[Rat] = None

    @property
    def counts(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.coordinates)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def passed(self) -> bool:
        return self.total <= self.bound


@dataclass
class CoverReport:
    """Hyperplanes (axis, value) or lattice lines (direction, value) holding every interior facet."""

    kind: str
    tile_count: int
    members: Tuple[Tuple[Any, Rat], ...]
    bound: Rat

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def passed(self) -> bool:
        return self.count <= self.bound


@dataclass
class AxisPairReport:
    i: int
    j: int
    count: int
    bound: Rat

    @property
    def passed(self) -> bool:
        return self.count <= self.bound


@dataclass
class RotationReport:
    rotation: int
    coordinates: Tuple[Rat, ...]
    sizes: Tuple[int, int, int]
    bound: Rat

    @property
    def passed(self) -> bool:
        return len(self.coordinates) <= self.bound


# --- Diophantine approximation ----------------------------------------------


@dataclass(frozen=True)
class ApproxGroup:
    """Find q with ||q a|| < 1/m for every a in values."""

    values: FrozenSet[Rat]
    m: int


@dataclass(frozen=True)
class ApproxRequest:
    groups: Tuple[ApproxGroup, ...]


@dataclass
class ApproxResult:
    q: int
    bound: int
    distances: Dict[Rat, Rat]
    probes: int = 0


@dataclass
class ApproxVerdict:
    ok: bool
    distances: Dict[Rat, Rat]


# --- Integerization ----------------------------------------------------------


@dataclass(frozen=True)
class GridLineCount:
    """
    Half-shifted grid lines through a tile. Rectangles fill `v` (vertical)
    and `h`; triangles fill `diag` (60 degree diagonal) and `h`.
    """

    h: int
    v: Optional[int] = None
    diag: Optional[int] = None

    @property
    def balanced(self) -> bool:
        other = self.v if self.v is not None else self.diag
        return other == self.h


@dataclass
class FlowVerdict:
    """Outcome of the flow-lemma harness: hypotheses per tile, then the conclusion."""

    precondition_ok: bool
    hypothesis_failures: List[int] = field(default_factory=list)
    conclusion_failures: List[int] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.precondition_ok and not self.hypothesis_failures

    @property
    def counterexample(self) -> bool:
        """Hypotheses hold but the conclusion fails: would falsify the lemma."""
        return self.hypotheses_hold and bool(self.conclusion_failures)


@dataclass
class ScalingCertificate:
    """
    q: the Dirichlet integer applied to the normalized tiling.
    factor: the exact scale applied to the input tiling (normalization and q composed).
    bound: the proven bound q (or the scaled longest side) must respect; None for the oracle.
    """

    pipeline: str
    q: int
    bound: Optional[PowerBound]
    factor: Rat
    scaled: Tiling
    integer_sides: List[Any]
    coordinate_set: Tuple[Rat, ...] = ()
    dirichlet_bound: int = 1
    rotation: Optional[int] = None
    axes: Optional[Tuple[int, int]] = None
    notes: List[str] = field(default_factory=list)


# --- Oracles -----------------------------------------------------------------


@dataclass
class QuiltResult:
    """Exhaustive minimal square count for a p x q rectangle."""

    width: int
    height: int
    status: str  # "optimal" | "exceeds_max_tiles" | "node_limit"
    count: Optional[int] = None
    witness: Optional[RectTiling] = None
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.status == "optimal"


@dataclass
class BoundAudit:
    width: int
    height: int
    tiles: int
    holds: bool
    reference: Dict[str, bool] = field(default_factory=dict)


# --- Ports -------------------------------------------------------------------


class TilingValidatorPort(ABC):
    """Abstract contract for exact partition checking."""

    @abstractmethod
    def validate(self, tiling: Tiling) -> ValidationReport:
        pass


class CoordinateAnalyzerPort(ABC):
    """Abstract contract for the counting lemmas over vertex coordinates."""

    @abstractmethod
    def analyze(self, tiling: Tiling) -> Dict[str, Any]:
        pass


class ApproximationEnginePort(ABC):
    """Abstract contract for simultaneous Diophantine approximation."""

    @abstractmethod
    def dirichlet(self, values: Iterable[Rat], n: int) -> ApproxResult:
        pass

    @abstractmethod
    def dirichlet_varied(self, request: ApproxRequest) -> ApproxResult:
        pass


class ScalingEnginePort(ABC):
    """Abstract contract for the integer-rescaling pipelines."""

    @abstractmethod
    def integerize(self, tiling: Tiling) -> ScalingCertificate:
        pass


class TilingGeneratorPort(ABC):
    """Abstract contract for the constructive tiling families."""

    @abstractmethod
    def generate(self, family: str, **params: int) -> Tiling:
        pass


class OraclePort(ABC):
    """Abstract contract for the independent brute-force oracles."""

    @abstractmethod
    def minimal_scale(self, tiling: Tiling) -> Rat:
        pass

    @abstractmethod
    def certificate(self, tiling: Tiling) -> ScalingCertificate:
        pass

    @abstractmethod
    def min_squares(self, width: int, height: int, max_tiles: Optional[int] = None) -> QuiltResult:
        pass

    @abstractmethod
    def audit(self, width: int, height: int, tiles: int) -> BoundAudit:
        pass

    @abstractmethod
    def horizon(self, width: int, height: int, tiles: int) -> List[int]:
        pass


class DocumentCodecPort(ABC):
    """Abstract contract for the JSON exchange format."""

    @abstractmethod
    def loads(self, text: str) -> Tiling:
        pass

    @abstractmethod
    def dumps(self, tiling: Tiling) -> str:
        pass


class RendererPort(ABC):
    """Abstract contract for static figure output."""

    @abstractmethod
    def render(self, tiling: Tiling, section: Optional[Tuple[int, int, Sequence[Rat]]] = None) -> str:
        pass


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator family plus its integer parameters (n, k, d, seed, depth)."""

    family: str
    params: Mapping[str, Any] = field(default_factory=dict)
