"""Exception types raised across the package."""

from __future__ import annotations

from .exactalg.linalg import SingularMatrix
from .exactalg.mat import DimensionMismatch, SchurSingular
from .exactalg.scalars import NotCyclotomic
from .exactalg.spectral import NonCommuting, NotDiagonalizable


class WitnessError(ValueError):
    """Base for failures that carry a concrete witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


class NotAScheme(WitnessError):
    def __init__(self, axiom: str, message: str, witness=None):
        super().__init__(f"axiom {axiom}: {message}", witness)
        self.axiom = axiom


class NonCommutativeScheme(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class NotAGroup(WitnessError):
    pass


class NotTypeII(WitnessError):
    pass


class NoParameterA(WitnessError):
    pass


class NoLoopScalar(WitnessError):
    pass


class NotDistinct(WitnessError):
    pass


class SynthesisFailure(ValueError):
    pass


class InvalidJacobi(WitnessError):
    pass


class NotDistanceRegular(WitnessError):
    pass


class AdmissibilityError(WitnessError):
    pass


class PreconditionError(ValueError):
    pass


class StrandMismatch(ValueError):
    pass


class StateSpaceOverflow(ValueError):
    pass


class UnknownEntry(KeyError):
    pass


__all__ = [
    "WitnessError", "NotAScheme", "NonCommutativeScheme", "CapExceeded", "NotAGroup", "NotTypeII",
    "NoParameterA", "NoLoopScalar", "NotDistinct", "SynthesisFailure", "InvalidJacobi",
    "NotDistanceRegular", "AdmissibilityError", "PreconditionError", "StrandMismatch",
    "StateSpaceOverflow", "UnknownEntry", "SingularMatrix", "DimensionMismatch", "SchurSingular",
    "NotCyclotomic", "NonCommuting", "NotDiagonalizable",
]
