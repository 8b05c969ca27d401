"""Exception hierarchy shared by every module of the package."""


class TriadicError(Exception):
    """Base class for all domain errors raised by this package."""


class ContextParseError(TriadicError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnknownNameError(TriadicError, ValueError):
    """A name was used that does not belong to the relevant universe."""


class SizeGuardError(TriadicError):
    """The requested computation would enumerate too large a search space."""


class KindError(TriadicError, TypeError):
    """An implication or base of the wrong kind was supplied."""


class NotEntailedError(TriadicError):
    """A derivation was requested for an implication that does not follow."""


class ImplicationSyntaxError(TriadicError, ValueError):
    pass
