from __future__ import annotations
from typing import Optional, Tuple


class GHError(Exception): ...


class SpaceValidationError(GHError, ValueError):
    """Input matrix is not a finite metric space; `entries` names the offending indices."""
    code = "INVALID_SPACE"

    def __init__(self, message: str, entries: Tuple[int, ...] = (), slack: Optional[float] = None):
        super().__init__(message)
        self.entries = tuple(entries)
        self.slack = slack


class ZeroDimension(SpaceValidationError):
    code = "ZERO_DIMENSION"


class NonSquareMatrix(SpaceValidationError):
    code = "NON_SQUARE"


class NonFiniteEntry(SpaceValidationError):
    code = "NON_FINITE"


class NonZeroDiagonal(SpaceValidationError):
    code = "NONZERO_DIAGONAL"


class ViolatedSymmetry(SpaceValidationError):
    code = "VIOLATED_SYMMETRY"


class NonPositiveOffDiagonal(SpaceValidationError):
    code = "NONPOSITIVE_OFF_DIAGONAL"


class ViolatedTriangle(SpaceValidationError):
    code = "VIOLATED_TRIANGLE"


class BadLabels(SpaceValidationError):
    code = "BAD_LABELS"


class DifferentAmbientSpaces(GHError, ValueError): ...
class NonPositiveScale(GHError, ValueError): ...
class SizeMismatch(GHError, ValueError): ...
class NonPositiveRadius(GHError, ValueError): ...


class RadiusTooSmall(GHError, ValueError):
    def __init__(self, radius: float, required: float):
        super().__init__(f"radius {radius!r} is below half the distortion {required!r}")
        self.radius = radius
        self.required = required


class OracleTooLarge(GHError):
    def __init__(self, nX: int, nY: int, cap: int):
        super().__init__(f"oracle needs nX*nY <= {cap}, got {nX}*{nY} = {nX * nY}")
        self.nX, self.nY, self.cap = nX, nY, cap


class EnumerationTooLarge(GHError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} maps to enumerate exceeds the cap of {cap}")
        self.count, self.cap = count, cap


class BudgetExhausted(GHError):
    """Search stopped at the node budget; carries the best object found and its bounds."""

    def __init__(self, message: str, best=None, lower_bound: float = 0.0,
                 upper_bound: float = float("inf"), nodes_explored: int = 0):
        super().__init__(message)
        self.best = best
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.nodes_explored = nodes_explored


class SpaceFileError(GHError, ValueError):
    def __init__(self, path: str, line: Optional[int], message: str):
        loc = f"{path}:{line}" if line is not None else path
        super().__init__(f"{loc}: {message}")
        self.path = path
        self.line = line
