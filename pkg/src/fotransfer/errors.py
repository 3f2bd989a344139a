"""Exception hierarchy shared by every module of the package."""


class LogicError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class ParseError(LogicError):
    def __init__(self, message, text="", pos=0, line=None):
        self.text = text
        self.pos = pos
        self.line = line
        where = f"line {line}" if line is not None else f"position {pos}"
        super().__init__(f"{message} at {where}")


class SignatureError(LogicError):
    """Unknown relation, arity mismatch, or a forbidden equality atom."""


class CaptureError(LogicError):
    """A substitution or relativization would capture a variable."""


class StructureError(LogicError):
    """Malformed finite structure, partition, or poset."""


class SchemeError(LogicError):
    """Malformed scheme or an input outside the translation's preconditions."""


class CorrectnessError(SchemeError):
    """Parameters do not pass the scheme's correctness check."""


class BudgetError(LogicError):
    """A brute-force enumeration exceeds its size budget."""
