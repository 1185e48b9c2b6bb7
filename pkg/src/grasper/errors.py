"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GrasperError(Exception):
    """Base class for all errors raised by grasper."""


class GroupSpecError(GrasperError, ValueError):
    """A free product description is malformed or unsupported."""


class UnknownGenerator(GrasperError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown generator {self.name!r}"


class ContextMismatch(GrasperError, ValueError):
    """Operands live in different groups."""


class ExponentOverflow(GrasperError, OverflowError):
    pass


class CoefficientOverflow(GrasperError, OverflowError):
    pass


class NoTFactor(GrasperError, ValueError):
    """The operation needs the distinguished generator ``t``."""


class MissingImage(GrasperError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"no image given for generator {self.name!r}"


class InvalidImage(GrasperError, ValueError):
    """A generator assignment does not respect the relations of its factor."""


class UnsupportedContext(GrasperError):
    """The requested computation is not available in this reduction context."""


class UnsupportedWeakContext(UnsupportedContext):
    pass


class NotS4Context(UnsupportedContext):
    pass


class CuffKnotted(UnsupportedContext):
    pass


class NonBaseElement(GrasperError, ValueError):
    """A word expected in the base group contains t, x or y."""


class NoYLetter(GrasperError, ValueError):
    pass


class UnsupportedInverse(GrasperError):
    pass


class BaseLettersPresent(UnsupportedInverse, ValueError):
    """The bar-word duality rule is only available for words in x and y."""


class ParseError(GrasperError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class MalformedExponent(ParseError):
    pass
