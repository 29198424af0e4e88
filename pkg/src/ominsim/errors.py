"""Exception types shared across the simulator."""


class SimulatorError(Exception):
    """Base class for all user-input and contract errors raised by this package."""


class NotPowerOfTwoError(SimulatorError):
    pass


class UnknownTopologyError(SimulatorError):
    pass


class OutOfRangeError(SimulatorError):
    pass


class UnsupportedTopologyError(SimulatorError):
    pass


class ParseError(SimulatorError):
    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DuplicateSourceError(SimulatorError):
    pass


class DuplicateDestinationError(SimulatorError):
    pass


class SameSourceError(SimulatorError):
    pass


class TooLargeError(SimulatorError):
    pass


class CoverageError(SimulatorError):
    pass


class IndexOutOfRangeError(SimulatorError):
    pass


class ZeroTrialsError(SimulatorError):
    pass
