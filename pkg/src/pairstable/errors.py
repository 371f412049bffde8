"""Exception hierarchy shared by all modules."""


class PairstableError(Exception):
    """Base class for every error raised by this package."""


class InputError(PairstableError, ValueError):
    """Malformed or inconsistent input data."""


class ParseError(InputError):
    """A document could not be parsed (bad JSON, bad DIMACS, wrong shape)."""


class UnknownAgent(InputError):
    pass


class ConflictingPair(InputError):
    """The same unordered pair was given two inconsistent relation tokens."""


class NonEdgePreference(InputError):
    """A comparison mentions an agent that is not adjacent to the owner."""


class InvalidMatching(InputError):
    """A matching uses a non-edge or puts an agent in two pairs."""


class EdgeNotInInstance(InputError):
    pass


class CyclicRelation(PairstableError):
    """The strict-preference digraph of a relation contains a cycle."""


class NotTies(PairstableError):
    """The relation cannot be written as a list with ties."""


class ClassGateViolation(PairstableError):
    """An instance falls outside the preference classes a solver accepts."""


class SizeGuard(PairstableError):
    """An exhaustive routine was asked to run on an input that is too large."""


class EmptyList(PairstableError, ValueError):
    pass


class ClauseArity(InputError):
    pass


class NotTwoTwoE3(InputError):
    """A formula does not have the (2,2)-E3-SAT occurrence profile."""


class InfeasibleN(InputError):
    pass


class AssignmentNotSatisfying(InputError):
    pass


class MalformedStableMatching(PairstableError):
    """A matching handed to the gadget decoder lacks the expected pattern."""
