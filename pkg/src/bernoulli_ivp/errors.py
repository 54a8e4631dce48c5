"""Exception hierarchy shared across the package."""


class BernoulliIVPError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(BernoulliIVPError):
    """Bad user input: malformed config, unknown key, unparseable expression."""


class ExprError(ConfigError):
    """Lexing or parsing failure. ``position`` is a 0-based offset into the source."""

    def __init__(self, message, source="", position=None):
        self.source = source
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if source:
                message += f"\n  {source}\n  {' ' * position}^"
        super().__init__(message)


class LexError(ExprError):
    pass


class ParseError(ExprError):
    pass


class OrderTooLargeError(ConfigError):
    """Requested truncation order exceeds the configured maximum."""


class NumericalError(BernoulliIVPError):
    """A computation could not produce a trustworthy result."""


class SingularSystemError(NumericalError):
    pass


class QuadratureError(NumericalError):
    """Non-finite integrand sample; ``x`` is the offending abscissa."""

    def __init__(self, message, x=None):
        self.x = x
        super().__init__(message)


class StepUnderflowError(NumericalError):
    """The Runge-Kutta oracle could not advance past ``x``."""

    def __init__(self, message, x=None):
        self.x = x
        super().__init__(message)
