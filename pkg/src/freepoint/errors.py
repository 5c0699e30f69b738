"""Exception types shared across the package.

Every deliberate failure mode gets its own class so callers (and the CLI
exit-code mapping) can distinguish usage errors from mathematical
counterexamples from resource limits.
"""


class Error(Exception):
    """Base class for all package errors."""


class NotPrime(Error):
    """Tower characteristic is not a prime number."""


class ModulusNotIrreducible(Error):
    """A tower level's modulus is reducible over the level below."""


class RaggedInput(Error):
    """Structurally malformed input: wrong lengths, non-monic modulus, bad shapes."""


class DegreeMismatch(Error):
    """An extension degree does not match what the operation requires."""


class TowerMismatch(Error):
    """Operands belong to incompatible towers or levels."""


class DivisionByZero(Error, ZeroDivisionError):
    """Division or inversion of the zero element."""


class RangeError(Error):
    """A numeric argument lies outside the operation's admissible range."""


class NotADivisor(Error):
    """A divisibility precondition fails (e.g. e must divide d)."""


class HypothesisViolated(Error):
    """A check was invoked outside its stated hypothesis."""


class BudgetExceeded(Error):
    """An enumeration or search exceeded its configured budget."""


class Exhausted(Error):
    """A search ran out of candidates without success."""


class SearchExhausted(Exhausted):
    """A bounded search inside a construction found no suitable element."""


class PointNotFree(Error):
    """A construction requires a free point and the supplied one is not."""


class DegreeTooSmall(Error):
    """The requested degree is too small for the construction."""


class ParamMismatch(Error):
    """Supplied objects disagree about their common parameters."""
