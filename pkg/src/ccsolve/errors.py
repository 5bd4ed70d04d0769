class CCError(Exception):
    """Base class for engine errors."""


class BudgetExceeded(CCError):
    pass


class UnknownAtom(CCError, KeyError):
    def __str__(self):
        return f"unknown atom {self.args[0]!r}"


class EmptyAntecedent(CCError):
    pass


class IncoherentAssessment(CCError):
    pass


class MissingPrevision(CCError):
    pass


class ContextMismatch(CCError):
    pass


class ConstantZeroAntecedent(CCError):
    pass


class PInconsistentPremises(CCError):
    pass


class InternalDisagreement(CCError):
    """Two procedures that must agree by theorem did not; an engine bug."""


class ParseError(CCError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"
