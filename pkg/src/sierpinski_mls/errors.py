"""Exception hierarchy shared by all modules.

The CLI reports failures by class name, so names here are part of the
user-visible surface.
"""


class GsnError(Exception):
    """Base class for every error raised by this package."""


class SelfLoop(GsnError):
    pass


class UnknownNode(GsnError):
    pass


class DuplicateEdge(GsnError):
    pass


class UnknownEdge(GsnError):
    pass


class OuterFaceEdge(GsnError):
    pass


class AlreadyAdjacent(GsnError):
    pass


class NotTwoFaces(GsnError):
    pass


class StepMismatch(GsnError):
    pass


class TooLarge(GsnError):
    pass


class TooSmall(GsnError):
    pass


class OutOfRange(GsnError):
    pass


class NotASpectrumDegree(GsnError):
    pass


class HistoryMismatch(GsnError):
    pass


class CompositionNotATree(GsnError):
    pass


class IndexOutOfRange(GsnError):
    pass


class EmptySet(GsnError):
    pass


class ConstraintViolation(GsnError):
    pass
