"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LsdomError(Exception):
    """Base class for all errors raised by this package."""


class BadShape(LsdomError, ValueError):
    """Grid is not square, is empty, or holds symbols outside 1..n."""


class NotLatin(LsdomError, ValueError):
    """A row or column repeats a symbol.

    Attributes:
        kind: ``"row"`` or ``"column"``.
        index: 1-based index of the offending row/column.
        symbol: the duplicated symbol.
    """

    def __init__(self, kind: str, index: int, symbol: int):
        self.kind = kind
        self.index = index
        self.symbol = symbol
        super().__init__(f"{kind} {index} repeats symbol {symbol}")


class DimensionMismatch(LsdomError, ValueError):
    """Permutation or vertex set sized for a different order."""


class SameVertex(LsdomError, ValueError):
    """A pairwise query was asked about a vertex and itself."""


class Infeasible(LsdomError, ValueError):
    """Coverage demand k exceeds the degree 3(n-1) of the graph."""

    def __init__(self, k: int, cap: int):
        self.k = k
        self.cap = cap
        super().__init__(f"k={k} is infeasible: every vertex has only {cap} neighbours (cap {cap})")


class BudgetExceeded(LsdomError):
    """The exact search hit its node limit.

    ``certificate`` carries the best set known when the search stopped.
    """

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(f"node budget exhausted; best known size {certificate.size}")


class TooLarge(LsdomError, ValueError):
    """Instance too large for exhaustive subset enumeration."""


class OrderTooSmall(LsdomError, ValueError):
    """A construction was asked for an order below its minimum."""


class NotCanonicalQStep(LsdomError, ValueError):
    """Square does not match the canonical q-step layout."""


class ConstructionFailed(LsdomError, RuntimeError):
    """A constructive procedure produced no verified set."""


class Mismatch(LsdomError, ValueError):
    """A bounds report and a certificate describe different instances."""


class FormatError(LsdomError, ValueError):
    """Malformed grid or certificate document."""
