class NumParseError(ValueError):
    """Base class for number parsing and rendering failures."""


class NotANumberPhrase(NumParseError):
    pass


class OutOfRange(NumParseError):
    pass


class InvalidDate(NumParseError):
    """Calendar-invalid day/month/year."""


class NotADate(NumParseError):
    """Surface matches no known date pattern."""


class NotScientific(NumParseError):
    pass


class PatternMismatch(NumParseError):
    pass


class DimensionMismatch(NumParseError):
    """Units belong to different scale families."""


class UnknownUnit(NumParseError):
    pass
