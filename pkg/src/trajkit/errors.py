"""Exception hierarchy for the trajectory-set engine."""


class TrajkitError(Exception):
    """Base class for all engine errors."""


class SchemaViolation(TrajkitError):
    """A trajectory does not conform to its signal space."""


class SchemaMismatch(TrajkitError):
    """Two behaviours were combined but their signal spaces differ."""


class VariableClash(TrajkitError):
    """Variable names overlap where disjointness is required."""


class HorizonMismatch(TrajkitError):
    """Two behaviours were combined but their horizons differ."""


class HorizonError(TrajkitError):
    """A horizon argument is out of range."""


class UnknownVariable(TrajkitError):
    """A variable name does not exist in the signal space."""


class OverlapError(TrajkitError):
    """Two variable sets overlap where disjointness is required."""


class EnumerationCapExceeded(TrajkitError):
    """A materialization would exceed the configured row cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(f"materialization needs {needed} rows, cap is {cap}")
        self.needed = needed
        self.cap = cap


class NotSynthesizable(TrajkitError):
    """A construction step was requested although the existence check failed."""


class InternalInconsistency(TrajkitError):
    """A relationship that is provably always true was violated (engine bug)."""


class SearchSpaceTooLarge(TrajkitError):
    """The exhaustive search space exceeds the configured caps."""

    def __init__(self, combinations: int, cap: int, detail: str = ""):
        message = f"search space has {combinations} controller families, cap is {cap}"
        if detail:
            message = f"{message}; {detail}"
        super().__init__(message)
        self.combinations = combinations
        self.cap = cap


class LengthError(TrajkitError):
    """A window length is incompatible with the trajectory length."""


class UnknownBlock(TrajkitError):
    """A block index does not exist in the trajectory."""


class DimensionMismatch(TrajkitError):
    """Vector/matrix dimensions do not agree."""


class ParseError(TrajkitError):
    """A document could not be parsed (malformed syntax or structure)."""


class ValidationError(TrajkitError):
    """A parsed document violates a semantic invariant."""
