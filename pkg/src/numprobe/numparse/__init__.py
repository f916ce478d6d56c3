"""Number detection, parsing, normalization, conversion and rendering."""

from .dates import ALTERNATE_FORMAT, DATE_PATTERNS, DateValue, format_date, parse_date
from .errors import (DimensionMismatch, InvalidDate, NotADate, NotANumberPhrase, NotScientific,
                     NumParseError, OutOfRange, PatternMismatch, UnknownUnit)
from .formats import (FormatDescriptor, format_scientific, parse_currency, parse_number,
                      parse_percentage, parse_scientific, render_number, render_percentage,
                      render_percentage_word)
from .rounding import granularity_exp, round_magnitude
from .scan import MentionKind, NumberMention, parse_mention, scan_mentions
from .units import (Catalog, Unit, bundled_catalog, convert_unit, default_catalog, load_catalog,
                    set_default_catalog, to_base)
from .values import NumericValue, relative_error, value_equal
from .words import (format_ordinal, integer_to_words, numeral_to_words, parse_ordinal,
                    words_to_numeral, year_to_words)

__all__ = [
    "ALTERNATE_FORMAT", "DATE_PATTERNS", "Catalog", "DateValue", "DimensionMismatch",
    "FormatDescriptor", "InvalidDate", "MentionKind", "NotADate", "NotANumberPhrase",
    "NotScientific", "NumParseError", "NumberMention", "NumericValue", "OutOfRange",
    "PatternMismatch", "Unit", "UnknownUnit", "set_default_catalog", "bundled_catalog", "convert_unit", "default_catalog", "format_date",
    "format_ordinal", "format_scientific", "granularity_exp", "integer_to_words", "load_catalog",
    "numeral_to_words", "parse_currency", "parse_date", "parse_mention", "parse_number",
    "parse_ordinal", "parse_percentage", "parse_scientific", "relative_error", "render_number",
    "render_percentage", "render_percentage_word", "round_magnitude", "scan_mentions", "to_base",
    "value_equal", "words_to_numeral", "year_to_words",
]
