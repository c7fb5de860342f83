"""Exception taxonomy shared across the package.

Input validation failures subclass ValueError so callers can catch broadly;
NoConvergence subclasses RuntimeError because it signals a resource cap, not
a malformed input.
"""


class PosetShuffleError(Exception):
    """Common base for everything raised on purpose by this package."""


class CycleError(PosetShuffleError, ValueError):
    """Cover list or relation closes a directed cycle."""


class LabelError(PosetShuffleError, ValueError):
    """Element label outside 1..n or malformed cover pair."""


class RangeError(PosetShuffleError, ValueError):
    """Numeric argument outside its documented range."""


class SizeMismatch(PosetShuffleError, ValueError):
    """Two objects that must share a ground set or size do not."""


class NotAPermutation(PosetShuffleError, ValueError):
    """Word is not a permutation of 1..n."""


class PositionRange(PosetShuffleError, ValueError):
    """Position index outside the word."""


class IncompatiblePosets(PosetShuffleError, ValueError):
    """Second order fails the refinement / component shape required of it."""


class NotLumpable(PosetShuffleError, ValueError):
    """Row block sums differ inside a fiber; carries a witness.

    Attributes: row_a, row_b (states in one fiber), fiber (target block index).
    """

    def __init__(self, msg, row_a=None, row_b=None, fiber=None):
        super().__init__(msg)
        self.row_a = row_a
        self.row_b = row_b
        self.fiber = fiber


class NotSymmetric(PosetShuffleError, ValueError):
    """Matrix expected to be exactly symmetric is not."""


class LengthMismatch(PosetShuffleError, ValueError):
    """Vector length does not match matrix dimension."""


class ConnectedPoset(PosetShuffleError, ValueError):
    """Operation defined only for disconnected posets got a connected one."""


class TrivialPoset(PosetShuffleError, ValueError):
    """Operation undefined when the poset has a single linear extension."""


class DimensionMismatch(PosetShuffleError, ValueError):
    """Matrix dimensions incompatible for the requested operation."""


class NotADistribution(PosetShuffleError, ValueError):
    """Vector is not a probability distribution."""


class NotStochastic(PosetShuffleError, ValueError):
    """Matrix rows (or columns) do not sum to one."""


class NoConvergence(PosetShuffleError, RuntimeError):
    """Iteration cap reached before the target tolerance."""
