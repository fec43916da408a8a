"""Exception types raised across the package."""


class LinkcombError(Exception):
    """Base class for all library errors."""


class GraphError(LinkcombError):
    """Malformed graph data (loops, multi-edges, bad rotation lists)."""


class NonPlanarEmbedding(LinkcombError):
    pass


class NotACycle(LinkcombError):
    pass


class CycleBoundsOuterFace(LinkcombError):
    pass


class UnknownVertex(LinkcombError):
    pass


class IndexOutOfRange(LinkcombError):
    pass


class TooSmall(LinkcombError):
    pass


class BadParams(LinkcombError):
    pass


class BadSpec(LinkcombError):
    pass


class StreamsNotDisjoint(LinkcombError):
    pass


class DegreeViolation(LinkcombError):
    pass


class TooLarge(LinkcombError):
    pass


class MalformedInput(LinkcombError):
    pass


class SearchBudgetExceeded(LinkcombError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class PreconditionViolated(LinkcombError):
    pass


class Infeasible(LinkcombError):
    pass


class PipelineInfeasible(LinkcombError):
    def __init__(self, stage, message):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class TooManyBridges(LinkcombError):
    pass


class NoValidAssignment(LinkcombError):
    pass


class ParseError(LinkcombError):
    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
