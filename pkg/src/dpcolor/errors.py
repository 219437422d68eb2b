"""Exception hierarchy shared by every module."""


class DPColorError(Exception):
    """Base class for all package errors."""


class PreconditionViolated(DPColorError):
    pass


class NotFound(DPColorError):
    pass


class ColorNotInList(DPColorError):
    pass


class PartialColoring(DPColorError):
    pass


class BadParams(DPColorError):
    pass


class NotAWitness(DPColorError):
    pass


class UnknownExample(DPColorError):
    pass


class BudgetExceeded(DPColorError):
    def __init__(self, estimate, budget):
        super().__init__(f"estimated {estimate} covers exceeds budget {budget}")
        self.estimate = estimate
        self.budget = budget


class InternalInvariantViolation(DPColorError):
    """A step the underlying argument guarantees has failed."""


class TheoremViolation(DPColorError):
    """An UNSAT instance whose structure contradicts a characterization."""


class ParseError(DPColorError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
