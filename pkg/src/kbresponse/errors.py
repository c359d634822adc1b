"""Exception hierarchy.

The CLI maps each family to its own exit status, so new errors should
subclass one of ``ValidationError``, ``ParseError`` or
``DegenerateDecomposition`` rather than ``KbResponseError`` directly.
"""


class KbResponseError(Exception):
    """Root of every error raised by this package."""


class ValidationError(KbResponseError, ValueError):
    """Input violates a documented precondition."""


class EmptyProfile(ValidationError):
    def __init__(self):
        super().__init__("service profile must contain at least one server")


class InvalidServiceTime(ValidationError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(
            f"service time of server {index} must be a positive finite number, got {value!r}"
        )


class IndexOutOfRange(ValidationError, IndexError):
    def __init__(self, index, upper, what="server index"):
        self.index = index
        self.upper = upper
        super().__init__(f"{what} {index} outside 1..{upper}")


class InvalidArgument(ValidationError):
    pass


class InvalidHorizon(ValidationError):
    pass


class CurveTooShort(ValidationError):
    def __init__(self, needed, available):
        self.needed = needed
        self.available = available
        super().__init__(
            f"flow-equivalent curve covers populations up to {available}, need {needed}"
        )


class DegenerateDecomposition(KbResponseError):
    def __init__(self, message="a single-server network has no relaying subnetwork to aggregate"):
        super().__init__(message)


class ParseError(KbResponseError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingField(ParseError):
    def __init__(self, field):
        self.field = field
        super().__init__(f"missing required field {field!r}")


class UnknownField(ParseError):
    def __init__(self, field):
        self.field = field
        super().__init__(f"unknown field {field!r}")
