"""Exception types shared across the toolkit."""

from __future__ import annotations


class SymspaceError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrix(SymspaceError):
    """Inverse or solve requested for a singular matrix."""


class DivisionByZero(SymspaceError):
    """A denominator vanished during exact evaluation."""


class NotAPerfectPower(SymspaceError):
    """Polynomial root extraction found inconsistent graded equations."""


class InvalidParams(SymspaceError):
    """Space parameters outside the supported range."""


class UnsupportedSpace(SymspaceError):
    """Exceptional spaces have no numeric Jordan kernel (root data only)."""


class ShapeMismatch(SymspaceError):
    """Element coordinates do not match the space dimensions."""


class NotInL(SymspaceError):
    """Operator is not in the span of the Levi-factor generators."""


class NotQuasiInvertible(SymspaceError):
    """Quasi-inverse requested on a pair with vanishing generic norm."""

    def __init__(self, delta_value=None):
        self.delta_value = delta_value
        super().__init__(f"pair is not quasi-invertible (generic norm = {delta_value})")


class NotInStructureGroup(SymspaceError):
    """Supplied operator does not preserve the generic norm."""


class SingularMetric(SymspaceError):
    """Metric matrix singular at the requested (polarized) point."""


class SpaceMismatch(SymspaceError):
    """Operands belong to different spaces."""


class ReconstructionMismatch(SymspaceError):
    """Taylor reconstruction failed to reproduce the input section."""


class InvalidSignature(SymspaceError):
    """Signature is not a weakly decreasing tuple of nonnegative integers."""


class NotEigenvector(SymspaceError):
    """Polynomial is not an eigenvector of the frame torus action."""
