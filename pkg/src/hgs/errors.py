"""Exception types shared across the package."""


class HgsError(Exception):
    """Base class for all package errors."""


class DegreeMismatch(HgsError):
    """Operands act on point sets of different sizes."""


class DegreeCapExceeded(HgsError):
    """Requested degree is above the configured cap."""


class OrderCapExceeded(HgsError):
    """Group closure grew past the enumeration cap."""


class BadParams(HgsError):
    """Constructor parameters are outside the valid range."""


class NotOrderP3(HgsError):
    """Classification asked for a group whose order is not p^3 for an odd prime p."""


class SearchExhausted(HgsError):
    """Internal failure: a backtracking search ended without the guaranteed solution."""


class NodeBudgetExceeded(HgsError):
    """Embedding search passed the configured node budget (reported as INFEASIBLE)."""


class DivisibilityViolation(HgsError):
    """An embedding count was not divisible by |Aut(N)|; signals an implementation bug."""


class ParseError(HgsError):
    """Malformed text input; carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotTransitive(HgsError):
    """A record's generators do not generate a transitive group."""


class BadSpec(HgsError):
    """A group-spec string does not parse or names an unsupported construction."""


class UnknownRecord(HgsError):
    """A dTk label is not present in the loaded corpus."""
