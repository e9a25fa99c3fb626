"""Exception types raised across the toolkit."""


class MatroidError(ValueError):
    """Base class for every error raised by this package."""


class BadRank(MatroidError):
    pass


class WrongSize(MatroidError):
    pass


class OverlapViolation(MatroidError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class DuplicateCH(MatroidError):
    pass


class BadLabels(MatroidError):
    pass


class OutOfRange(MatroidError):
    pass


class NotACircuitHyperplane(MatroidError):
    pass


class NotNested(MatroidError):
    pass


class KTooSmall(MatroidError):
    pass


class BadRelaxation(MatroidError):
    pass


class TooFewEdges(MatroidError):
    pass


class ParseError(MatroidError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class LoopEdge(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class TooLarge(MatroidError):
    pass


class ForeignFlat(MatroidError):
    pass


class RankMismatch(MatroidError):
    pass
