"""Surface formats for numbers: digits, grouping, words, scientific, percent, currency.

A :class:`FormatDescriptor` splits a numeric surface into
``prefix + core + magnitude + suffix``.  The core pattern decides how the
displayed number is written; the magnitude word ("million") scales it.
``render`` and ``parse`` are inverse on canonical surfaces, which is what lets
probe generators swap a value while keeping the original presentation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import NotANumberPhrase, NotScientific, PatternMismatch
from .units import Catalog, default_catalog
from .values import NumericValue
from .words import (MAGNITUDE_WORDS, format_ordinal, numeral_to_words, parse_ordinal,
                    words_to_numeral, year_to_words)

NEGATIVE_PREFIXES = ("-", "minus ", "negative ")

NUMERIC_PATTERNS = ("plain-digits", "grouped-thousands", "sci-e-notation", "words", "words-year")
ORDINAL_PATTERNS = ("ordinal-suffix", "ordinal-word")
TIME_PATTERNS = ("time-24h", "time-12h")


@dataclass(frozen=True)
class FormatDescriptor:
    pattern: str
    decimals: int = 0
    magnitude: str = ""
    prefix: str = ""
    suffix: str = ""
    word_hyphen: bool = True
    notes: str = ""

    @property
    def magnitude_exp(self) -> int:
        return MAGNITUDE_WORDS[self.magnitude] if self.magnitude else 0

    @property
    def negative_prefix(self) -> bool:
        return self.prefix.lower() in NEGATIVE_PREFIXES

    def with_(self, **changes) -> "FormatDescriptor":
        return replace(self, **changes)

    def displayed(self, value) -> NumericValue:
        """The number as written in the core, before the magnitude word."""
        return NumericValue.of(value).scaleb(-self.magnitude_exp)

    def render_core(self, value) -> str:
        shown = self.displayed(value)
        if self.negative_prefix:
            shown = abs(shown)
        return render_number(shown, self.pattern, self.decimals, self.word_hyphen)

    def render(self, value) -> str:
        mag = f" {self.magnitude}" if self.magnitude else ""
        return f"{self.prefix}{self.render_core(value)}{mag}{self.suffix}"

    def parse(self, surface: str) -> NumericValue:
        s = surface
        if not (s.startswith(self.prefix) and s.endswith(self.suffix)):
            raise PatternMismatch(f"{surface!r} does not fit {self}")
        core = s[len(self.prefix): len(s) - len(self.suffix) if self.suffix else None]
        if self.magnitude:
            tail = f" {self.magnitude}"
            if not core.endswith(tail):
                raise PatternMismatch(f"{surface!r} lacks magnitude {self.magnitude!r}")
            core = core[: -len(tail)]
        value = parse_number(core, self.pattern)
        if self.negative_prefix:
            value = -value
        return value.scaleb(self.magnitude_exp)


# number cores --------------------------------------------------------------

_DIGITS_RE = re.compile(r"-?(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?\Z")
_SCI_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)[eE][+-]?\d+\Z")


def _group(text: str) -> str:
    sign = "-" if text.startswith("-") else ""
    integer, dot, frac = text.lstrip("-").partition(".")
    return f"{sign}{int(integer):,}{dot}{frac}"


def render_number(value, pattern: str, decimals: int = 0, hyphen: bool = True) -> str:
    value = NumericValue.of(value)
    if pattern in ("plain-digits", "grouped-thousands"):
        text = value.quantize(decimals).plain() if decimals >= value.decimals else value.plain()
        return _group(text) if pattern == "grouped-thousands" else text
    if pattern == "sci-e-notation":
        return format_scientific(value)
    if pattern == "words":
        return numeral_to_words(value, hyphen=hyphen)
    if pattern == "words-year":
        if not value.is_integer:
            return numeral_to_words(value, hyphen=hyphen)
        return year_to_words(int(value), hyphen=hyphen)
    if pattern in ORDINAL_PATTERNS:
        return format_ordinal(int(value), "suffix" if pattern == "ordinal-suffix" else "word")
    if pattern in TIME_PATTERNS:
        return format_time(int(value), pattern)
    raise PatternMismatch(f"unknown number pattern {pattern!r}")


def parse_number(core: str, pattern: str | None = None) -> NumericValue:
    """Parse a bare number core; ``pattern=None`` accepts any numeric pattern."""
    text = core.strip()
    if pattern in (None, "plain-digits", "grouped-thousands") and _DIGITS_RE.match(text):
        return NumericValue.of(text.replace(",", ""))
    if pattern in (None, "sci-e-notation") and _SCI_RE.match(text):
        return parse_scientific(text)
    if pattern in (None, "words", "words-year"):
        try:
            return words_to_numeral(text)
        except NotANumberPhrase:
            if pattern is not None:
                raise
    if pattern in ORDINAL_PATTERNS:
        return NumericValue.of(parse_ordinal(text))
    if pattern in TIME_PATTERNS:
        return NumericValue.of(parse_time(text))
    raise PatternMismatch(f"{core!r} is not a number in pattern {pattern!r}")


def describe_core(core: str) -> FormatDescriptor:
    """Infer the core pattern (and decimals / hyphen style) of a number surface."""
    text = core.strip()
    if _SCI_RE.match(text):
        return FormatDescriptor("sci-e-notation")
    if _DIGITS_RE.match(text):
        decimals = len(text.partition(".")[2])
        pattern = "grouped-thousands" if "," in text else "plain-digits"
        return FormatDescriptor(pattern, decimals=decimals)
    value = words_to_numeral(text)
    hyphen = bool(re.search(r"[a-z]-[a-z]", text.lower()))
    if value.is_integer and 1000 <= int(value) <= 9999:
        try:
            if year_to_words(int(value), hyphen).lower() == " ".join(text.lower().split()) \
                    and year_to_words(int(value)) != numeral_to_words(value, hyphen=False):
                return FormatDescriptor("words-year", word_hyphen=hyphen)
        except NotANumberPhrase:
            pass
    return FormatDescriptor("words", word_hyphen=hyphen)


# scientific notation ---------------------------------------------------------

def format_scientific(value) -> str:
    """Engineering e-notation: coefficient in [1, 1000), exponent a multiple of 3.

    116111561 -> '116.111561e6', 2500 -> '2.5e3'.
    """
    value = NumericValue.of(value)
    if value.is_zero:
        return "0e0"
    adjusted = len(str(value.digits)) - 1 + value.scale_exp
    exp3 = 3 * (adjusted // 3)
    coeff = value.scaleb(-exp3)
    return f"{coeff.plain()}e{exp3}"


def parse_scientific(surface: str) -> NumericValue:
    text = surface.strip()
    if not _SCI_RE.match(text):
        raise NotScientific(surface)
    return NumericValue.of(text)


# percentages -------------------------------------------------------------------

_PERCENT_RE = re.compile(r"(?P<core>.+?)(?P<suf>%|\s*percent|\s+per cent)\Z", re.IGNORECASE)


def parse_percentage(surface: str) -> tuple[NumericValue, str]:
    """'35%' -> (35, 'percent-sign'); '35 percent' -> (35, 'percent-word')."""
    m = _PERCENT_RE.match(surface.strip())
    if not m:
        raise PatternMismatch(f"not a percentage: {surface!r}")
    style = "percent-sign" if m.group("suf") == "%" else "percent-word"
    return parse_number(m.group("core")), style


def render_percentage(value, style: str = "percent-sign") -> str:
    core = NumericValue.of(value).plain()
    return f"{core}%" if style == "percent-sign" else f"{core} percent"


def render_percentage_word(value) -> str:
    return render_percentage(value, "percent-word")


# currency ----------------------------------------------------------------------

def parse_currency(surface: str, catalog: Catalog | None = None) -> tuple[NumericValue, str]:
    """'$137 million' -> (137000000, 'USD'); '5 EUR' -> (5, 'EUR')."""
    catalog = catalog or default_catalog()
    text = surface.strip()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    for symbol in sorted(catalog.currency_by_symbol, key=len, reverse=True):
        if text.startswith(symbol):
            value = _parse_scaled(text[len(symbol):].strip())
            return (value if sign > 0 else -value), catalog.currency_by_symbol[symbol]
    parts = text.rsplit(None, 1)
    if len(parts) == 2 and parts[1].lower() in catalog.currency_by_word:
        value = _parse_scaled(parts[0])
        return (value if sign > 0 else -value), catalog.currency_by_word[parts[1].lower()]
    raise PatternMismatch(f"not a currency amount: {surface!r}")


def _parse_scaled(text: str) -> NumericValue:
    parts = text.rsplit(None, 1)
    if len(parts) == 2 and parts[1].lower() in MAGNITUDE_WORDS:
        return parse_number(parts[0]).scaleb(MAGNITUDE_WORDS[parts[1].lower()])
    return parse_number(text)


# times -------------------------------------------------------------------------

_TIME_RE = re.compile(r"(?P<h>\d{1,2}):(?P<m>[0-5]\d)(?:\s*(?P<ap>[ap])\.?m\.?)?\Z", re.IGNORECASE)


def parse_time(surface: str) -> int:
    """Minutes since midnight for '14:30' or '2:30 pm'."""
    m = _TIME_RE.match(surface.strip())
    if not m:
        raise PatternMismatch(f"not a time: {surface!r}")
    h, mins = int(m.group("h")), int(m.group("m"))
    ap = (m.group("ap") or "").lower()
    if ap:
        if not 1 <= h <= 12:
            raise PatternMismatch(f"bad 12-hour time {surface!r}")
        h = h % 12 + (12 if ap == "p" else 0)
    elif h > 23:
        raise PatternMismatch(f"bad 24-hour time {surface!r}")
    return h * 60 + mins


def format_time(minutes: int, pattern: str = "time-24h") -> str:
    h, m = divmod(minutes % (24 * 60), 60)
    if pattern == "time-24h":
        return f"{h}:{m:02d}"
    ap = "pm" if h >= 12 else "am"
    return f"{(h % 12) or 12}:{m:02d} {ap}"
