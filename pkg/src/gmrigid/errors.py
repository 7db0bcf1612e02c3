"""Exception types shared across the package.

Every structural rejection gets its own class so that callers (and the
command line driver) can distinguish "your input is not a graph manifold"
from "your input is malformed text" without string matching.
"""


class GmError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# Seifert piece construction


class NonCoprime(GmError):
    """A cone pair (p, q) with gcd(p, q) != 1, or a unit test failed."""


class NonHyperbolicBase(GmError):
    """The base orbifold is not hyperbolic (orbifold Euler characteristic >= 0)."""


class NoBoundary(GmError):
    """A piece was declared with no boundary components."""


# ---------------------------------------------------------------------------
# Gluing / assembly


class DeterminantNotMinusOne(GmError):
    """A gluing matrix whose determinant is not -1."""


class GammaZero(GmError):
    """A gluing matrix with lower-left entry 0 (fibres would match up)."""


class SlotReused(GmError):
    """The same (vertex, slot) pair appears in two edge ends."""


class SameTarget(GmError):
    """A Dehn twist was asked to push and pull on the same target."""


class Disconnected(GmError):
    """The underlying graph is not connected."""


class TooManyFreeSlots(GmError):
    """Free boundary count does not match the requested mode."""


class NotClosed(GmError):
    """An operation that needs a closed manifold received one with boundary."""


class NotKnotMode(GmError):
    """An operation that needs a one-boundary manifold received something else."""


# ---------------------------------------------------------------------------
# Decision procedure


class SlopeNonzero(GmError):
    """A scaling transform was requested but some total slope is nonzero."""


class BadInverse(GmError):
    """The two residues handed to a scaling transform are not inverse mod L."""


class NonUnit(GmError):
    """A residue that must be a unit modulo the given modulus is not."""


# ---------------------------------------------------------------------------
# Knot trees


class InvalidTree(GmError):
    """A cabling/sum expression tree violates its parameter constraints."""


# ---------------------------------------------------------------------------
# Finite quotient oracle


class BudgetExceeded(GmError):
    """The homomorphism search visited more nodes than the budget allows."""


class BadGroupTable(GmError):
    """A multiplication table failed the group axioms or the file is malformed."""


# ---------------------------------------------------------------------------
# Text format


class ParseError(GmError):
    """Syntax error in a manifold file or knot expression.

    Carries 1-based line and column numbers for reporting.
    """

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = "line %d, col %d: %s" % (line, col if col else 1, message)
        super().__init__(message)
