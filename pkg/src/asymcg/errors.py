class AsymcgError(Exception):
    """Base class for errors raised by this package."""

    kind = "error"


class InvalidInput(AsymcgError, ValueError):
    kind = "invalid-input"


class ParseError(InvalidInput):
    kind = "parse-error"

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.message = message
        self.offset = offset


class SupportLimitError(AsymcgError):
    kind = "support-limit"


class BranchAmbiguityError(AsymcgError, ArithmeticError):
    """An eigenvalue sits on the branch cut of the principal logarithm."""

    kind = "branch-ambiguous"
