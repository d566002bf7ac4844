# path: src/application/use_cases.py
# description: Application Orchestration v1.0.
#
# ARCHITECTURAL ROLE (Hexagonal / DDD):
# One application service per CLI command. Each coordinates the codec, the
# validator and one engine through their ports; the concrete adapters are
# injected by the driving adapter (src/infrastructure/cli.py).
#
# Use cases raise TilingError subclasses and return report DTOs. Mapping
# those onto exit codes and output streams is the CLI's job.

import json
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.domain.exact_numeric import Rat
from src.domain.exceptions import InvalidTilingError, MalformedTilingError
from src.domain.ports import (
    BoundAudit,
    CoordinateAnalyzerPort,
    DocumentCodecPort,
    GeneratorSpec,
    OraclePort,
    QuiltResult,
    RendererPort,
    ScalingCertificate,
    ScalingEnginePort,
    TilingGeneratorPort,
    TilingValidatorPort,
    ValidationReport,
)
from src.domain.tiling_model import Tiling

logger = logging.getLogger(__name__)


def _declared_kind(text: str) -> str:
    """Best-effort 'kind' of a document whose tiles failed to construct."""
    try:
        kind = json.loads(text).get("kind")
    except (ValueError, AttributeError):
        return "unknown"
    return kind if isinstance(kind, str) else "unknown"


class _TilingInput:
    """Shared parse-then-require-valid step."""

    def __init__(self, codec: DocumentCodecPort, validator: TilingValidatorPort):
        self._codec = codec
        self._validator = validator

    def _load_valid(self, text: str) -> Tiling:
        tiling = self._codec.loads(text)
        report = self._validator.validate(tiling)
        if not report.passed:
            raise InvalidTilingError(
                "input does not partition its region",
                outside_tiles=report.outside_tiles,
                overlapping_pairs=report.overlapping_pairs,
                structural=report.structural,
            )
        return tiling


class ValidateTilingUseCase:
    """
    Parses and validates. Malformed tiles (x0 >= x1, c == 0) are a
    validation finding here, not an error.
    """

    def __init__(self, codec: DocumentCodecPort, validator: TilingValidatorPort):
        self._codec = codec
        self._validator = validator

    def execute(self, text: str) -> ValidationReport:
        try:
            tiling = self._codec.loads(text)
        except MalformedTilingError as exc:
            logger.info("VALIDATOR_SYS: structural failure %s", exc.details)
            return ValidationReport(kind=_declared_kind(text), tile_count=0, structural=[str(exc)])
        return self._validator.validate(tiling)


class AnalyzeTilingUseCase(_TilingInput):
    def __init__(self, codec: DocumentCodecPort, validator: TilingValidatorPort, analyzer: CoordinateAnalyzerPort):
        super().__init__(codec, validator)
        self._analyzer = analyzer

    def execute(self, text: str) -> Dict[str, Any]:
        return self._analyzer.analyze(self._load_valid(text))


class ScaleTilingUseCase(_TilingInput):
    """
    method "dirichlet": the pipeline matching the tiling family.
    method "oracle": the exact minimal scale, for comparison.
    """

    def __init__(
        self,
        codec: DocumentCodecPort,
        validator: TilingValidatorPort,
        scaling: ScalingEnginePort,
        oracle: OraclePort,
    ):
        super().__init__(codec, validator)
        self._scaling = scaling
        self._oracle = oracle

    def execute(self, text: str, method: str = "dirichlet") -> ScalingCertificate:
        tiling = self._load_valid(text)
        if method == "oracle":
            cert = self._oracle.certificate(tiling)
        else:
            cert = self._scaling.integerize(tiling)
        # the certificate's tiling must itself be a tiling
        report = self._validator.validate(cert.scaled)
        if not report.passed:
            raise InvalidTilingError("scaled output does not re-validate", pipeline=cert.pipeline)
        return cert


class GenerateTilingUseCase:
    def __init__(self, generator: TilingGeneratorPort, codec: DocumentCodecPort):
        self._generator = generator
        self._codec = codec

    def execute(self, spec: GeneratorSpec) -> str:
        return self._codec.dumps(self._generator.generate(spec.family, **dict(spec.params)))


class MinSquaresUseCase:
    """Exhaustive minimum plus, for exact coprime results, the 4^n audit."""

    def __init__(self, oracle: OraclePort, codec: DocumentCodecPort):
        self._oracle = oracle
        self._codec = codec

    def execute(self, width: int, height: int, max_tiles: Optional[int] = None) -> Tuple[QuiltResult, Optional[BoundAudit]]:
        result = self._oracle.min_squares(width, height, max_tiles)
        audit = None
        if result.exact and math.gcd(width, height) == 1:
            audit = self._oracle.audit(width, height, result.count)
        return result, audit

    def witness_document(self, result: QuiltResult) -> Optional[str]:
        return None if result.witness is None else self._codec.dumps(result.witness)


class HorizonUseCase:
    def __init__(self, oracle: OraclePort):
        self._oracle = oracle

    def execute(self, width: int, height: int, tiles: int) -> List[int]:
        return self._oracle.horizon(width, height, tiles)


class RenderTilingUseCase(_TilingInput):
    def __init__(self, codec: DocumentCodecPort, validator: TilingValidatorPort, renderer: RendererPort):
        super().__init__(codec, validator)
        self._renderer = renderer

    def execute(self, text: str, section: Optional[Tuple[int, int, Sequence[Rat]]] = None) -> str:
        return self._renderer.render(self._load_valid(text), section)
