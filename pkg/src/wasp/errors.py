"""Exception hierarchy shared by all modules."""


class WaspError(Exception):
    """Base class for every error raised by the engine."""

    code = "error"


class ParseError(WaspError):
    code = "parse_error"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class CarrierError(WaspError, TypeError):
    """A value does not belong to the carrier of the semiring it is used with."""

    code = "carrier_mismatch"


class OrderUnsupported(WaspError):
    code = "order_unsupported"


class NonGroundError(WaspError):
    code = "non_ground"


class UnsafeProgram(WaspError):
    code = "unsafe"


class GroundingError(WaspError):
    code = "grounding_error"


class CapacityError(WaspError):
    code = "capacity"


class Inconsistent(WaspError):
    code = "inconsistent"


class ZeroMass(WaspError):
    code = "zero_mass"


class NegativeWeight(WaspError):
    code = "negative_weight"


class FragmentError(WaspError):
    """Input lies outside the program fragment an operation accepts."""

    code = "fragment"


class TimeRangeError(WaspError):
    code = "time_out_of_range"
