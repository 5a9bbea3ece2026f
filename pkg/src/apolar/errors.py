"""Exception hierarchy shared by every module."""


class ApolarError(Exception):
    """Base class for all errors raised by the package."""


class PolySyntaxError(ApolarError):
    """Malformed polynomial text; ``position`` is the offending 0-based offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(PolySyntaxError):
    pass


class NonIntegerExponent(PolySyntaxError):
    pass


class RingMismatch(ApolarError):
    pass


class InconsistentRing(RingMismatch):
    pass


class NotArtinian(ApolarError):
    pass


class NotGenerating(ApolarError):
    pass


class Inhomogeneous(ApolarError):
    pass


class ZeroPolynomial(ApolarError):
    pass


class NotCubic(ApolarError):
    pass


class NotGorenstein(ApolarError):
    pass


class NotBigraded(ApolarError):
    pass


class DegreeMismatch(ApolarError):
    pass


class DegreeTooSmall(ApolarError):
    pass


class PreconditionFailed(ApolarError):
    """Raised by certification when hypotheses fail; ``failing`` names them."""

    def __init__(self, failing: list[str]):
        self.failing = list(failing)
        super().__init__("failing conditions: " + ", ".join(self.failing))
