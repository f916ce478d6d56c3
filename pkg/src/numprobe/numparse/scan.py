"""Locate numerical mentions in English text.

Every pattern proposes candidates over the whole text; selection is
left-to-right, longest match first, with a fixed kind priority breaking ties.
Spans are ``str`` offsets, so ``text[start:end] == surface`` always holds.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from .dates import DATE_PATTERNS, DateValue, _LOOSE, format_date, parse_date
from .errors import NumParseError
from .formats import FormatDescriptor, describe_core, parse_time
from .units import Catalog, default_catalog
from .values import NumericValue
from .words import (MAGNITUDE_WORDS, NUMBER_WORDS, ORDINAL_TENS, ORDINAL_TEENS, ORDINAL_UNITS,
                    TENS, parse_ordinal, words_to_numeral)


class MentionKind(str, enum.Enum):
    DATE = "Date"
    TIME = "Time"
    CURRENCY = "Currency"
    PERCENTAGE = "Percentage"
    SCIENTIFIC = "ScientificNotation"
    MEASURED = "MeasuredQuantity"
    ORDINAL = "Ordinal"
    NEGATIVE = "NegativeNumber"
    CARDINAL_DIGITS = "CardinalDigits"
    CARDINAL_WORDS = "CardinalWords"


PRIORITY = {kind: rank for rank, kind in enumerate(MentionKind)}

# kinds whose value is a plain quantity (not a date, time or rank)
QUANTITY_KINDS = frozenset({
    MentionKind.CURRENCY, MentionKind.PERCENTAGE, MentionKind.SCIENTIFIC, MentionKind.MEASURED,
    MentionKind.NEGATIVE, MentionKind.CARDINAL_DIGITS, MentionKind.CARDINAL_WORDS,
})


@dataclass(frozen=True)
class NumberMention:
    span: tuple[int, int]
    surface: str
    kind: MentionKind
    value: "NumericValue | DateValue"
    unit: str | None
    format: FormatDescriptor

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    @property
    def is_quantity(self) -> bool:
        return self.kind in QUANTITY_KINDS

    @property
    def displayed(self) -> NumericValue:
        """The number as written, before any magnitude word ("5" in "5 million")."""
        return self.format.displayed(self.value)

    def render(self, value=None, fmt: FormatDescriptor | None = None) -> str:
        """Re-render with a new value and/or format, keeping everything else."""
        value = self.value if value is None else value
        fmt = fmt or self.format
        if self.kind is MentionKind.DATE:
            return format_date(value, fmt.pattern)
        return fmt.render(value)

    def is_year_like(self) -> bool:
        """A bare four-digit integer that reads as a calendar year."""
        return (self.kind is MentionKind.CARDINAL_DIGITS and self.format.pattern == "plain-digits"
                and not self.format.magnitude and self.value.is_integer
                and 1000 <= int(self.value) <= 2099)


# pattern construction -------------------------------------------------------

_DIGITS = r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?"
_SCI = r"\d+(?:\.\d+)?[eE][+-]?\d+"
_WORD = "|".join(sorted(NUMBER_WORDS, key=len, reverse=True))
_UNIT_WORD = "|".join(w for w in ["zero", "one", "two", "three", "four", "five", "six", "seven",
                                   "eight", "nine", "oh"])
_WORDS = (rf"(?:{_WORD})(?:(?:\s+and\s+|[ \t]+|-)(?:{_WORD}|oh(?=\s+(?:{_UNIT_WORD})\b)))*"
          rf"(?:\s+point(?:\s+(?:{_UNIT_WORD}))+)?")
_MAG = r"(?:\s+(?:thousand|million|billion|trillion)\b)"
_NUM_START = r"(?<![\w.])(?<!\d,)"
_NUM_END = r"(?![\w]|\.\d|,\d)"
_WORD_START = r"(?<![\w-])"
_WORD_END = r"(?![\w-])"

_ORD_WORD = "|".join(
    [rf"(?:{'|'.join(t for t in TENS if t)})-(?:{'|'.join(ORDINAL_UNITS[1:])})"]
    + sorted(ORDINAL_TEENS + list(ORDINAL_TENS) + ORDINAL_UNITS[1:] + ["hundredth"], key=len, reverse=True)
)

# determiners after which "one" is a pronoun ("the one with ...")
_PRONOUN_ONE = re.compile(r"(?:\b(?:the|this|that|each|every|any|no|which|another|a|some)\s+)\Z", re.IGNORECASE)


@dataclass(frozen=True)
class _Patterns:
    date: list
    time: re.Pattern
    currency: list
    percentage: re.Pattern
    scientific: re.Pattern
    measured: re.Pattern
    ordinal: re.Pattern
    negative: list
    digits: re.Pattern
    words: re.Pattern


@lru_cache(maxsize=8)
def _patterns(catalog: Catalog) -> _Patterns:
    units = catalog.unit_alias_pattern
    symbols = "|".join(re.escape(s) for s in sorted(catalog.currency_by_symbol, key=len, reverse=True))
    cur_words = "|".join(re.escape(w) for w in sorted(catalog.currency_by_word, key=len, reverse=True))
    core_digital = rf"(?:{_SCI}|{_DIGITS})"
    core_any = rf"(?:{_SCI}|{_DIGITS}|{_WORDS})"
    # digits and words need different left boundaries
    core_any_start = rf"(?:{_NUM_START}(?:{_SCI}|{_DIGITS})|{_WORD_START}(?:{_WORDS}))"

    date = []
    for pid, rx in DATE_PATTERNS.items():
        rx = _LOOSE.get(pid, rx)
        date.append((pid, re.compile(rf"(?<![\w/.\-]){rx}(?![\w/\-]|\.\d)", re.IGNORECASE)))

    currency = [
        re.compile(rf"(?<![\w$€£¥₹])(?P<pre>(?:{symbols})\s?)(?P<core>{core_digital})(?P<mag>{_MAG})?{_NUM_END}"),
        re.compile(rf"(?P<core>{core_any_start})(?P<mag>{_MAG})?(?P<suf>\s+(?i:{cur_words}))(?![\w])", re.IGNORECASE),
    ]
    return _Patterns(
        date=date,
        time=re.compile(r"(?<![\w:.])(?:[01]?\d|2[0-3]):[0-5]\d(?:\s*[ap]\.?m\.?|(?![\w:]))", re.IGNORECASE),
        currency=currency,
        percentage=re.compile(rf"(?P<core>{core_any_start})(?P<mag>{_MAG})?(?P<suf>%|\s?(?i:percent)\b|\s+(?i:per cent)\b)", re.IGNORECASE),
        scientific=re.compile(rf"{_NUM_START}(?P<core>{_SCI}){_NUM_END}"),
        measured=re.compile(rf"(?P<core>{core_any_start})(?P<mag>{_MAG})?(?P<suf>\s?(?i:{units}))(?![\w/])", re.IGNORECASE),
        ordinal=re.compile(rf"(?<![\w.])\d+(?:st|nd|rd|th)(?!\w)|{_WORD_START}(?i:{_ORD_WORD}){_WORD_END}"),
        negative=[
            re.compile(rf"(?<!\S)(?P<pre>-)(?P<core>{core_digital})(?P<mag>{_MAG})?"
                       rf"(?P<suf>\s+(?i:{cur_words})(?![\w])|\s?(?i:{units})(?![\w/]))?{_NUM_END}"),
            re.compile(rf"(?<![\w-])(?P<pre>(?i:minus|negative)\s+)(?P<core>(?:{_SCI}|{_DIGITS}|{_WORDS}))"
                       rf"(?P<mag>{_MAG})?(?P<suf>\s+(?i:{cur_words})(?![\w])|\s?(?i:{units})(?![\w/]))?(?![\w-])", re.IGNORECASE),
        ],
        digits=re.compile(rf"{_NUM_START}(?P<core>{_DIGITS})(?P<mag>{_MAG})?{_NUM_END}"),
        words=re.compile(rf"{_WORD_START}(?P<core>(?i:{_WORDS})){_WORD_END}", re.IGNORECASE),
    )


# candidate builders ---------------------------------------------------------

def _core_format(core: str, m: re.Match, prefix: str = "", suffix: str = "") -> FormatDescriptor:
    fmt = describe_core(core)
    mag = (m.group("mag") or "").strip().lower() if "mag" in m.re.groupindex else ""
    return fmt.with_(magnitude=mag, prefix=prefix, suffix=suffix)


def _shrink_words(text: str, start: int, end: int):
    """Longest prefix of a word run that parses as a cardinal, as (end, value)."""
    tokens = list(re.finditer(r"[A-Za-z]+", text[start:end]))
    for k in range(len(tokens), 0, -1):
        stop = start + tokens[k - 1].end()
        chunk = text[start:stop]
        if tokens[k - 1].group().lower() in ("and", "point", "oh"):
            continue
        try:
            return stop, words_to_numeral(chunk)
        except NumParseError:
            continue
    return None


def _candidates(text: str, catalog: Catalog):
    pats = _patterns(catalog)
    out = []

    def add(kind, start, end, value, unit, fmt):
        out.append((start, end, kind, value, unit, fmt))

    for pid, rx in pats.date:
        for m in rx.finditer(text):
            try:
                d = parse_date(m.group(), pid)
            except NumParseError:
                continue
            add(MentionKind.DATE, m.start(), m.end(), d, None, FormatDescriptor(pid))

    for m in pats.time.finditer(text):
        try:
            minutes = parse_time(m.group())
        except NumParseError:
            continue
        pattern = "time-12h" if re.search(r"[ap]\.?m\.?$", m.group(), re.IGNORECASE) else "time-24h"
        add(MentionKind.TIME, m.start(), m.end(), NumericValue.of(minutes), None, FormatDescriptor(pattern))

    for rx in pats.currency:
        for m in rx.finditer(text):
            pre = m.groupdict().get("pre") or ""
            suf = m.groupdict().get("suf") or ""
            try:
                fmt = _core_format(m.group("core"), m, pre, suf)
                value = fmt.parse(m.group())
            except NumParseError:
                continue
            code = (catalog.currency_by_symbol[pre.strip()] if pre
                    else catalog.currency_by_word[suf.strip().lower()])
            add(MentionKind.CURRENCY, m.start(), m.end(), value, code, fmt)

    for m in pats.percentage.finditer(text):
        try:
            fmt = _core_format(m.group("core"), m, "", m.group("suf"))
            value = fmt.parse(m.group())
        except NumParseError:
            continue
        add(MentionKind.PERCENTAGE, m.start(), m.end(), value, None, fmt)

    for m in pats.scientific.finditer(text):
        fmt = FormatDescriptor("sci-e-notation")
        add(MentionKind.SCIENTIFIC, m.start(), m.end(), fmt.parse(m.group()), None, fmt)

    for m in pats.measured.finditer(text):
        suf = m.group("suf")
        try:
            unit = catalog.measure_unit_for_alias(suf.strip())
            fmt = _core_format(m.group("core"), m, "", suf)
            value = fmt.parse(m.group())
        except NumParseError:
            continue
        add(MentionKind.MEASURED, m.start(), m.end(), value, unit.id, fmt)

    for m in pats.ordinal.finditer(text):
        try:
            n = parse_ordinal(m.group())
        except NumParseError:
            continue
        pattern = "ordinal-suffix" if m.group()[0].isdigit() else "ordinal-word"
        add(MentionKind.ORDINAL, m.start(), m.end(), NumericValue.of(n), None, FormatDescriptor(pattern))

    for rx in pats.negative:
        for m in rx.finditer(text):
            pre, suf = m.group("pre"), m.group("suf") or ""
            try:
                fmt = _core_format(m.group("core"), m, pre, suf)
                value = fmt.parse(m.group())
            except NumParseError:
                continue
            if value.sign > 0:
                continue
            unit = None
            if suf.strip():
                key = suf.strip()
                unit = catalog.currency_by_word.get(key.lower()) or catalog.measure_unit_for_alias(key).id
            add(MentionKind.NEGATIVE, m.start(), m.end(), value, unit, fmt)

    for m in pats.digits.finditer(text):
        fmt = _core_format(m.group("core"), m)
        add(MentionKind.CARDINAL_DIGITS, m.start(), m.end(), fmt.parse(m.group()), None, fmt)

    pos = 0
    while True:
        m = pats.words.search(text, pos)
        if m is None:
            break
        start = m.start()
        hit = _shrink_words(text, start, m.end())
        if hit is None:
            pos = m.end()
            continue
        end, value = hit
        pos = end
        surface = text[start:end]
        if surface.lower() == "one" and _PRONOUN_ONE.search(text[:start]):
            continue
        add(MentionKind.CARDINAL_WORDS, start, end, value, None, describe_core(surface))
    return out


def scan_mentions(text: str, catalog: Catalog | None = None) -> list[NumberMention]:
    """All maximal, non-overlapping number mentions in ``text``, left to right."""
    if not text:
        return []
    catalog = catalog or default_catalog()
    cands = _candidates(text, catalog)
    cands.sort(key=lambda c: (c[0], -(c[1] - c[0]), PRIORITY[c[2]]))
    chosen, last_end = [], 0
    for start, end, kind, value, unit, fmt in cands:
        if start < last_end or end <= start:
            continue
        chosen.append(NumberMention((start, end), text[start:end], kind, value, unit, fmt))
        last_end = end
    return chosen


def parse_mention(surface: str, catalog: Catalog | None = None) -> NumberMention | None:
    """The single mention covering all of ``surface`` (after stripping), if any."""
    stripped = surface.strip()
    mentions = scan_mentions(stripped, catalog)
    if len(mentions) == 1 and mentions[0].span == (0, len(stripped)):
        return mentions[0]
    return None
