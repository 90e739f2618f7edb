"""Exception hierarchy.

Everything the library raises on a mathematical refusal derives from
:class:`CongruentError`, so the CLI can map it to exit code 1 in one place.
"""


class CongruentError(Exception):
    """Base class for mathematical refusals."""

    code = "CongruentError"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class ZeroInput(CongruentError, ValueError):
    code = "ZeroInput"


class NotUniqueRealRoot(CongruentError):
    code = "NotUniqueRealRoot"


class Reducible(CongruentError):
    code = "Reducible"

    def __init__(self, message, root=None):
        super().__init__(message)
        self.root = root


class NoRealRoot(CongruentError):
    code = "NoRealRoot"


class FieldMismatch(CongruentError, TypeError):
    code = "FieldMismatch"


class NotOnCurve(CongruentError):
    code = "NotOnCurve"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class CurveMismatch(CongruentError, TypeError):
    code = "CurveMismatch"


class InvalidIndex(CongruentError, ValueError):
    code = "InvalidIndex"


class NotRightTriangle(CongruentError):
    code = "NotRightTriangle"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class WrongArea(CongruentError):
    code = "WrongArea"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NonPositiveSide(CongruentError):
    code = "NonPositiveSide"


class TorsionInput(CongruentError):
    code = "TorsionInput"


class NotCertified(CongruentError):
    code = "NotCertified"


class IdentityViolated(CongruentError):
    code = "IdentityViolated"


class ExceptionalTorsionPair(CongruentError):
    code = "ExceptionalTorsionPair"

    def __init__(self, message, n=None, s=None):
        super().__init__(message)
        self.n = n
        self.s = s

    def to_dict(self):
        d = super().to_dict()
        d.update(n=self.n, s=self.s)
        return d


class DegenerateN4(CongruentError):
    code = "DegenerateN4"


class Inapplicable(CongruentError):
    code = "Inapplicable"


class CacheCorrupt(CongruentError):
    code = "CacheCorrupt"
