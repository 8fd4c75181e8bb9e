"""Exception hierarchy shared by every module of the package."""


class LiestabError(Exception):
    """Base class for all library errors."""


class FieldSyntaxError(LiestabError, ValueError):
    pass


class NotPrime(LiestabError, ValueError):
    pass


class ShapeMismatch(LiestabError, ValueError):
    pass


class FieldMismatch(LiestabError, ValueError):
    pass


class Singular(LiestabError, ArithmeticError):
    pass


class NotClassifiable(LiestabError, ValueError):
    """The Gram matrix is neither symmetric nor antisymmetric."""


class NotClosed(LiestabError, ValueError):
    def __init__(self, i: int, j: int, message: str = ""):
        self.pair = (i, j)
        super().__init__(message or f"bracket of basis elements {i} and {j} leaves the span")


class NotIdeal(LiestabError, ValueError):
    pass


class BadSpec(LiestabError, ValueError):
    pass


class Unsupported(LiestabError, ValueError):
    pass


class ZeroMatrix(LiestabError, ValueError):
    pass


class NotAssociative(LiestabError, ValueError):
    pass


class ConfigError(LiestabError, ValueError):
    pass
