"""Exception hierarchy shared by every zforce module."""


class ZForceError(Exception):
    """Base class for all library errors."""


class GraphError(ZForceError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class Graph6Error(GraphError):
    pass


class MalformedHeader(Graph6Error):
    pass


class TruncatedBitVector(Graph6Error):
    pass


class NonPrintableByte(Graph6Error):
    pass


class InstanceTooLarge(ZForceError):
    pass


class PreconditionError(ZForceError):
    """Input graph is outside the connected claw-free cubic family."""


class IsK4(PreconditionError):
    pass


class NotClawFreeCubic(PreconditionError):
    pass


class Disconnected(PreconditionError):
    pass


class PartitionFailure(PreconditionError):
    pass


class NotSimpleCubic(ZForceError):
    pass


class PreconditionBreach(ZForceError):
    """A forcing rule was invoked on a vertex that does not fit its configuration."""


class StuckNoEligibleVertex(ZForceError):
    """The certificate builder halted with no vertex a rule can act on (bug trap)."""


class BadParameter(ZForceError):
    pass


class InvalidSpec(ZForceError):
    pass


class Unsatisfiable(ZForceError):
    pass
