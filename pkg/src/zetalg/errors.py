"""Exception hierarchy.

``DomainError`` subclasses describe bad or unsupported input (CLI exit 1);
``CrossCheckFailure`` signals that two independent computations disagreed
(CLI exit 2).
"""


class ZetalgError(Exception):
    pass


class DomainError(ZetalgError):
    pass


class AxiomViolation(DomainError):
    pass


class NonCommutative(AxiomViolation):
    pass


class NegativeStructureConstant(AxiomViolation):
    pass


class NotIntegral(DomainError):
    pass


class NotSplit(DomainError):
    def __init__(self, factor: str):
        super().__init__(f"algebra is not split over Q: irreducible factor {factor}")
        self.factor = factor


class NonIntegralFrameNumber(DomainError):
    pass


class NotRelevant(DomainError):
    pass


class InputSchemaError(DomainError):
    pass


class Singular(ZetalgError, ValueError):
    pass


class ResourceBudgetExceeded(DomainError):
    pass


class NotStabilized(ZetalgError):
    pass


class PrecisionUnstable(ZetalgError):
    pass


class CrossCheckFailure(ZetalgError):
    pass
