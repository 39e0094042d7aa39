"""Exception hierarchy for the qva engine."""

from typing import Dict, Optional


class QVAError(Exception):
    """Base class for every error raised by the engine."""


class InvalidConfig(QVAError, ValueError):
    """A run configuration or an input document is malformed."""


class SymmetryViolated(QVAError, ValueError):
    """g(z)g(1/z) != 1."""


class IrrationalRoots(QVAError, ValueError):
    """The numerator of g does not split into linear factors over QQ."""


class ZeroLeadingTerm(QVAError, ZeroDivisionError):
    """Inverting a series that is zero up to its truncation."""


class TruncationError(QVAError, ArithmeticError):
    """A coefficient at or beyond the truncation degree was requested."""


class FactorizationMismatch(QVAError, ArithmeticError):
    """h(x) != eps * q(x) * q(-x)^-1 after construction."""


class ZeroVector(QVAError, ValueError):
    """Weight of the zero vector was requested."""


class NegativeIndex(QVAError, ValueError):
    """phi_i requested with i < 0."""


class ZeroAlpha(QVAError, ValueError):
    """A[alpha] requested with alpha = 0."""


class UnsupportedG(QVAError, ValueError):
    """g is outside the supported scope (needs l = 0 in canonical form)."""


class RelationInconsistency(QVAError):
    """The Verma quotient killed a nonzero vector of the top space U."""

    def __init__(self, message: str, degree: int = 0, witness: Optional[Dict] = None):
        """Initialize with the collapsing degree and a witness."""
        super().__init__(message)
        self.degree = degree
        self.witness = witness or {}
