"""Exception hierarchy.

Every failure that carries mathematical meaning (as opposed to bad input) derives
from :class:`MathFailure`; the command line maps those to exit code 1 and all
other :class:`FactorSysError` subclasses to exit code 2.
"""

from __future__ import annotations


class FactorSysError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str = "", **witness):
        super().__init__(message)
        self.witness = witness


class InputError(FactorSysError):
    pass


class MathFailure(FactorSysError):
    pass


class DimensionMismatch(InputError):
    pass


class MissingInvolution(InputError):
    pass


class OutOfWindow(FactorSysError):
    pass


class UnknownSymbol(InputError):
    pass


class SinkPresent(InputError):
    pass


class NotABasis(MathFailure):
    pass


class AxiomViolation(MathFailure):
    def __init__(self, tag: str, message: str = "", **witness):
        super().__init__(f"{tag}: {message}" if message else tag, **witness)
        self.tag = tag


class WitnessRejected(AxiomViolation):
    pass


class DecompositionMismatch(MathFailure):
    pass


class NotParseval(MathFailure):
    pass


class IdentityMismatch(MathFailure):
    pass


class Cond1Violation(AxiomViolation):
    def __init__(self, message: str = "", **witness):
        super().__init__("cond1", message, **witness)


class Cond2Violation(AxiomViolation):
    def __init__(self, message: str = "", **witness):
        super().__init__("cond2", message, **witness)


class ConditionsNotVerified(MathFailure):
    pass


class NotGraded(MathFailure):
    pass


class GeneratorConditionFails(MathFailure):
    pass


class NotCentral(MathFailure):
    pass


class ActionCheckFailed(MathFailure):
    pass


class WindowNotClosed(MathFailure):
    pass


class CentralExtractionMismatch(MathFailure):
    pass


class CocycleViolation(MathFailure):
    pass


class NoSolution(MathFailure):
    pass


class NotCrossedHom(MathFailure):
    pass


class NotGauge(MathFailure):
    pass


class BracketNotClosed(MathFailure):
    pass


class BianchiViolation(MathFailure):
    pass


class ConsistencyMismatch(MathFailure):
    pass


class KernelNotCentralLine(MathFailure):
    pass


class NotADerivation(MathFailure):
    pass


class StarCond1Violation(AxiomViolation):
    def __init__(self, message: str = "", **witness):
        super().__init__("star_cond1", message, **witness)


class StarCond2Violation(AxiomViolation):
    def __init__(self, message: str = "", **witness):
        super().__init__("star_cond2", message, **witness)


class StarNotPreserved(MathFailure):
    pass
