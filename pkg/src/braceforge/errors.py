"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` and an optional
``witness`` (a JSON-serialisable value) so the CLI can emit a diagnostic
without knowing which module raised it.
"""

from __future__ import annotations

from typing import Any


class BraceForgeError(Exception):
    code = "error"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self), "witness": self.witness}


class MalformedInput(BraceForgeError):
    code = "MalformedInput"


class NotABijection(BraceForgeError):
    code = "NotABijection"


class NotInvolutive(BraceForgeError):
    code = "NotInvolutive"


class YBEViolation(BraceForgeError):
    code = "YBEViolation"


class NotInvariant(BraceForgeError):
    code = "NotInvariant"


class SizeMismatch(BraceForgeError):
    code = "SizeMismatch"


class DegreeMismatch(BraceForgeError):
    code = "DegreeMismatch"


class IndexOutOfRange(BraceForgeError):
    code = "IndexOutOfRange"


class CapExceeded(BraceForgeError):
    code = "CapExceeded"


class InternalInconsistency(BraceForgeError):
    """Raised when a result that must hold by construction does not."""

    code = "InternalInconsistency"


class AxiomViolation(BraceForgeError):
    code = "AxiomViolation"

    def __init__(self, which: str, witness: Any = None):
        super().__init__(f"brace axiom violated: {which}", witness)
        self.which = which

    def to_json(self) -> dict:
        out = super().to_json()
        out["which"] = self.which
        return out


class NotAnIdeal(BraceForgeError):
    code = "NotAnIdeal"


class NotRadical(BraceForgeError):
    code = "NotRadical"


class NotTwoSided(BraceForgeError):
    code = "NotTwoSided"
