"""Exception hierarchy shared by all modules."""


class EhrhartError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(EhrhartError, ValueError):
    """Bad user input (CLI exit code 1)."""


class NotFullRank(InvalidInput):
    pass


class ZeroVector(InvalidInput):
    pass


class NotABasis(InvalidInput):
    pass




class NotSolid(InvalidInput):
    pass


class BadCodimension(InvalidInput):
    pass


class BadArgs(InvalidInput):
    pass


class DimensionNot2(InvalidInput):
    pass


class ParseError(InvalidInput):
    pass


class ValidationError(InvalidInput):
    pass


class DegenerateSimplex(ValidationError):
    pass


class InsufficientSamples(InvalidInput):
    pass


class InconsistentSamples(InvalidInput):
    pass


class InconsistentDegree(InvalidInput):
    pass


class WindowMismatch(EhrhartError):
    """A caller asked for series coefficients the inputs cannot determine."""


class ZeroTauCoefficient(EhrhartError, ZeroDivisionError):
    pass


class LambdaNotGeneric(EhrhartError):
    """A pairing <lambda, w> vanished; the caller should redraw lambda."""


class ExhaustedGenericity(EhrhartError):
    pass


class InternalAssertion(EhrhartError, AssertionError):
    """An analyticity or regularity sentinel failed (CLI exit code 2).

    Never caused by bad input; always an implementation bug.
    """


class NotRegular(InternalAssertion):
    pass
