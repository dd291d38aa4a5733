"""Exception types shared across the package."""


class RingError(Exception):
    """Base class for all fusion-ring errors."""


class MalformedRingError(RingError):
    """Structurally broken input: dual not an involution, bad indices, ..."""


class RingFormatError(RingError):
    """Unparseable or schema-violating JSON input."""


class NonConvergenceError(RingError):
    """Power iteration failed to converge (signals a broken ring)."""


class InconsistentGradingError(RingError):
    """Fusion components do not multiply single-valuedly."""


class FixedPointError(RingError):
    """De-equivariantization subgroup has a fixed simple."""

    def __init__(self, message, invertible=None, fixed=None):
        super().__init__(message)
        self.invertible = invertible
        self.fixed = fixed


class NotASubgroupError(RingError):
    """De-equivariantization input is not a subgroup of the invertibles."""


class DegenerateGradeError(RingError):
    """The requested graded piece is empty."""


class SearchCapExceededError(RingError):
    """The completion search exceeded its node budget."""


class NoSolutionError(RingError):
    """No completion satisfies the constraints; carries the first conflict."""

    def __init__(self, message, conflict=None):
        super().__init__(message)
        self.conflict = conflict


class NonUniqueCompletionError(RingError):
    """A generator graph admitted several ring completions where one was
    required."""


class InvalidActionError(RingError):
    """Group action matrix is not a valid module structure for the acting
    group (not invertible, or its order does not divide the group order)."""


class BoundsExceededError(RingError):
    """Brute-force oracle asked to run outside its stated bounds."""


class UnknownFamilyError(RingError):
    """Catalog lookup for a family that is not in the tables."""
