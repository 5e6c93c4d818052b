"""Exception hierarchy shared by every module of the package."""


class PosetEntropyError(Exception):
    """Base class for all errors raised by this package."""


class CycleError(PosetEntropyError):
    """The supplied relation contains a directed cycle."""


class UnknownElement(PosetEntropyError, KeyError):
    """A relation mentions an element that was not declared."""


class WidthExceeded(PosetEntropyError):
    """The poset cannot be covered by two chains."""


class InvalidCover(PosetEntropyError):
    """A chain pair is not a valid two-chain cover of the poset."""


class LimitExceeded(PosetEntropyError):
    """Input is larger than the configured limit of an exhaustive routine."""


class NotBipartite(PosetEntropyError):
    """A graph handed to the Körner–Marton routines has an edge inside a side."""


class TooLarge(PosetEntropyError):
    """Input too large for the stable-set enumeration oracle."""


class AmbiguousSign(PosetEntropyError):
    """Certified evaluation could not decide the sign of an expression."""


class DisconnectedGraph(PosetEntropyError):
    """An operation that needs a connected incomparability graph got a disconnected one."""


class PreconditionFailed(PosetEntropyError):
    """Inputs violate the documented precondition of a check."""


class InconsistentOracle(PosetEntropyError):
    """Answers from the comparison oracle contradict the partial order."""


class BadSpec(PosetEntropyError, ValueError):
    """Invalid corpus generator parameters."""


class ParseError(PosetEntropyError, ValueError):
    """Malformed poset file."""


class OracleMismatch(PosetEntropyError, AssertionError):
    """An exact computation disagrees with its independent oracle."""
