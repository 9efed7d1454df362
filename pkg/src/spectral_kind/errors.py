"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SpectralKindError(Exception):
    """Base class for all errors raised by this package."""


class GraphInputError(SpectralKindError, ValueError):
    """Invalid graph data: loops, out-of-range vertices, asymmetric matrices."""


class Graph6Error(GraphInputError):
    """Malformed graph6 text. ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ConstructionError(GraphInputError):
    """A parametrised construction (GP, LCF, extremal family) was given bad input."""


class CatalogLookupError(SpectralKindError, LookupError):
    def __init__(self, name: str, suggestions: list[str]):
        msg = f"unknown graph name {name!r}"
        if suggestions:
            msg += "; did you mean: " + ", ".join(suggestions)
        super().__init__(msg)
        self.name = name
        self.suggestions = suggestions


class HypothesisError(SpectralKindError, ValueError):
    """The input violates a hypothesis of the requested bound (e.g. regularity)."""


class NumericError(SpectralKindError, ArithmeticError):
    pass


class ConvergenceError(NumericError):
    pass


class WalkCountOverflowError(NumericError):
    pass


class PrecisionError(NumericError):
    pass
