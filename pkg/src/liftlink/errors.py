"""Exception taxonomy shared by the whole package.

Two kinds of failure are kept strictly apart:

* hard errors (bad input, violated preconditions, internal invariants) are
  raised as exceptions from this module;
* non-authoritative negatives ("not found / not verified within the current
  depth or budget") are ordinary return values of the individual operations,
  never exceptions, except for :class:`DepthExhausted` and
  :class:`ResourceBudgetExceeded` which mark that a whole pipeline run gave
  up without a verdict.
"""


class LiftlinkError(Exception):
    """Base class for all package-specific errors."""


class UnknownVertex(LiftlinkError):
    pass


class SameVertex(LiftlinkError):
    """An operation got twice the same vertex where two were required."""


class NotIncident(LiftlinkError):
    """An edge was expected to touch a given vertex but does not."""


class SameEdge(LiftlinkError):
    """An operation needs two distinct edges."""


class DisconnectedGraph(LiftlinkError):
    pass


class DisconnectedContractionSet(LiftlinkError):
    """Contraction sets must induce a connected subgraph."""


class NonIntersectingSets(LiftlinkError):
    """The two-set counting identity needs intersecting sets."""


class NotEulerian(LiftlinkError):
    """Closed trails through every edge need even degrees and connectivity."""


class OddK(LiftlinkError):
    """Raised where a parameter has the wrong parity for the operation."""


class PreconditionViolated(LiftlinkError):
    """A documented precondition of an operation does not hold."""


class Stuck(LiftlinkError):
    """A greedy phase ran out of admissible moves.

    For the splitting routines this is an internal-consistency failure:
    the structure theory guarantees a move exists whenever the documented
    preconditions hold.
    """


class ConsistencyError(LiftlinkError):
    """An outcome contradicts a theorem-backed guarantee."""


class DepthExhausted(LiftlinkError):
    """Depth-bounded verification failed up to the configured cap.

    Non-authoritative: the object searched for may exist beyond the cap.
    """


class ResourceBudgetExceeded(LiftlinkError):
    """A complete search hit its node budget before reaching a verdict."""


class BoundaryNotFinite(LiftlinkError):
    """An infinite-graph region was expected to have a finite boundary."""


class MalformedDocument(LiftlinkError):
    """A serialized document is missing fields or has the wrong shape."""
