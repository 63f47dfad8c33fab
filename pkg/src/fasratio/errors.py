class FasratioError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(FasratioError):
    """A solver or oracle was asked for an instance beyond its resource cap."""


class HypothesisError(FasratioError, ValueError):
    """A bound was evaluated outside the parameter range it is valid for."""


class EdgeListError(FasratioError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
