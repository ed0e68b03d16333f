"""Exception hierarchy.  Everything the library raises on bad input derives
from :class:`RamseyLabError`, so the CLI can map it to exit status 2."""


class RamseyLabError(ValueError):
    pass


class EmptyWindowError(RamseyLabError):
    pass


class DimensionError(RamseyLabError):
    pass


class InvalidSequenceError(RamseyLabError):
    pass


class OutOfRangeError(RamseyLabError):
    pass


class FormatError(RamseyLabError):
    pass


class PreconditionError(RamseyLabError):
    pass


class NotPiecewiseSyndeticError(PreconditionError):
    pass


class InvalidFamilyError(RamseyLabError):
    pass


class EmptyIntersectionError(RamseyLabError):
    def __init__(self, message, culprits):
        super().__init__(message)
        self.culprits = culprits


class ResourceLimitError(RuntimeError):
    """A search ran out of its node or time budget.

    ``certificate`` carries the best partial result found so far.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
