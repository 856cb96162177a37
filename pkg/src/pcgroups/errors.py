"""Exception hierarchy for the pcgroups package.

Every domain error raised by the library derives from PcgError, so CLI and
callers can catch one type.  Usage errors (bad CLI flags) are left to
argparse.
"""


class PcgError(Exception):
    """Base class for all domain errors."""


# graph construction / queries

class DuplicateVertex(PcgError):
    pass


class UnknownEndpoint(PcgError):
    pass


class SelfLoop(PcgError):
    pass


class UnknownVertex(PcgError):
    pass


class BadParameter(PcgError):
    pass


class GraphFormatError(PcgError):
    pass


# word parsing / rewriting

class WordSyntaxError(PcgError):
    pass


class UnknownGenerator(PcgError):
    pass


class ZeroExponent(PcgError):
    pass


class NotCyclicallyMinimal(PcgError):
    pass


# cosets / HNN layer

class NotAClique(PcgError):
    pass


class LinkNotClique(PcgError):
    pass


class NoSplitFound(PcgError):
    pass


# verdicts

class TNotInSupport(PcgError):
    pass


class ConflictingVerdicts(PcgError):
    """Internal invariant breach: two theorems disagreed on a subset."""


# census

class BadAlphabet(PcgError):
    pass


class BudgetExceeded(PcgError):
    pass


class NonIntegralFormula(PcgError):
    """A closed formula whose division must be exact left a remainder."""


class BadSeed(PcgError):
    pass
