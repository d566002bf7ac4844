# path: src/domain/exceptions.py
# description: Domain Error Taxonomy v1.0.
#
# ARCHITECTURAL ROLE (Domain Boundary):
# Every failure that crosses a layer boundary is a TilingError carrying a
# stable snake-case key. The driving adapter (CLI) reports the key and the
# details dict verbatim, so the keys are part of the external contract.

from typing import Any, Dict, Optional


class TilingError(Exception):
    """Base class for all domain failures."""

    key = "error_tiling"

    def __init__(self, message: str, key: Optional[str] = None, **details: Any):
        super().__init__(message)
        if key is not None:
            self.key = key
        self.details: Dict[str, Any] = details

    def to_payload(self) -> Dict[str, Any]:
        return {"error": self.key, "message": str(self), "details": self.details}


class MalformedTilingError(TilingError):
    """A tile or region violates its structural invariants (x0 >= x1, c == 0, ...)."""

    key = "error_malformed_tiling"


class InvalidTilingError(TilingError):
    """A tile set that does not partition its region was given where a tiling is required."""

    key = "error_invalid_tiling"


class PreconditionViolation(TilingError):
    """An operation's hypothesis does not hold. The key names the hypothesis."""

    key = "error_precondition"


class TheoremViolation(TilingError):
    """
    A computed conclusion contradicts a proven bound or lemma.

    Never expected on correct code; tests treat it as build-stopping.
    """

    key = "error_theorem_violation"


class DocumentParseError(TilingError):
    key = "error_parse"

    def __init__(self, message: str, location: str = "", **details: Any):
        super().__init__(message, location=location, **details)
        self.location = location


class RenderError(TilingError):
    key = "error_render"
