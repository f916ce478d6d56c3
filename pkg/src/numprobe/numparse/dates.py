"""Calendar dates in the English surface formats found in infoboxes and claims."""

from __future__ import annotations

import calendar
import re
from dataclasses import dataclass

from .errors import InvalidDate, NotADate
from .words import format_ordinal, ordinal_suffix

MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August",
          "September", "October", "November", "December"]
_MONTH_ALIASES = {m.lower(): i + 1 for i, m in enumerate(MONTHS)}
_MONTH_ALIASES.update({m[:3].lower(): i + 1 for i, m in enumerate(MONTHS)})
_MONTH_ALIASES["sept"] = 9

MONTH_RE = (r"(?:January|February|March|April|May|June|July|August|September|October|November|December"
            r"|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec)\.?")
_ORD_DAY = r"(?:[1-9]|[12]\d|3[01])(?:st|nd|rd|th)"
_DAY = r"(?:0?[1-9]|[12]\d|3[01])"
_YEAR = r"\d{4}"

# pattern id -> regex with named groups d, m, y (m is digits or a month name)
DATE_PATTERNS: dict[str, str] = {
    "ordinal-day-monthname-comma-year": rf"(?P<d>{_ORD_DAY}) (?P<m>{MONTH_RE}), (?P<y>{_YEAR})",
    "ordinal-day-monthname-year": rf"(?P<d>{_ORD_DAY}) (?P<m>{MONTH_RE}) (?P<y>{_YEAR})",
    "monthname-ordinal-day-comma-year": rf"(?P<m>{MONTH_RE}) (?P<d>{_ORD_DAY}), (?P<y>{_YEAR})",
    "monthname-day-comma-year": rf"(?P<m>{MONTH_RE}) (?P<d>{_DAY}), (?P<y>{_YEAR})",
    "day-monthname-year": rf"(?P<d>{_DAY}) (?P<m>{MONTH_RE}) (?P<y>{_YEAR})",
    "iso-ymd": r"(?P<y>\d{4})-(?P<m>\d{2})-(?P<d>\d{2})",
    "dmy-hyphen": r"(?P<d>\d{2})-(?P<m>\d{2})-(?P<y>\d{4})",
    "dmy-slash": r"(?P<d>\d{2})/(?P<m>\d{2})/(?P<y>\d{4})",
    "dmy-dot": r"(?P<d>\d{2})\.(?P<m>\d{2})\.(?P<y>\d{4})",
    "monthname-year": rf"(?P<m>{MONTH_RE}) (?P<y>{_YEAR})",
}

# loose variants accepted when parsing, rendered canonically (zero padding, full month names)
_LOOSE = {
    "dmy-hyphen": r"(?P<d>\d{1,2})-(?P<m>\d{1,2})-(?P<y>\d{4})",
    "dmy-slash": r"(?P<d>\d{1,2})/(?P<m>\d{1,2})/(?P<y>\d{4})",
    "dmy-dot": r"(?P<d>\d{1,2})\.(?P<m>\d{1,2})\.(?P<y>\d{4})",
}

# what a date is re-rendered as for a representation-only probe
ALTERNATE_FORMAT = {
    "ordinal-day-monthname-comma-year": "dmy-hyphen",
    "ordinal-day-monthname-year": "dmy-hyphen",
    "monthname-ordinal-day-comma-year": "dmy-hyphen",
    "monthname-day-comma-year": "dmy-hyphen",
    "day-monthname-year": "dmy-hyphen",
    "iso-ymd": "day-monthname-year",
    "dmy-hyphen": "monthname-day-comma-year",
    "dmy-slash": "monthname-day-comma-year",
    "dmy-dot": "monthname-day-comma-year",
    "monthname-year": "monthname-year",
}

_COMPILED = {k: re.compile(v + r"\Z", re.IGNORECASE) for k, v in DATE_PATTERNS.items()}
_COMPILED_LOOSE = {k: re.compile(v + r"\Z", re.IGNORECASE) for k, v in _LOOSE.items()}


@dataclass(frozen=True)
class DateValue:
    """A calendar date; ``day`` is None for month-year dates.

    Equality ignores the surface format so dates compare across renderings.
    """

    day: int | None
    month: int
    year: int
    source_format: str = "iso-ymd"

    def __post_init__(self):
        validate_date(self.day, self.month, self.year)

    def __eq__(self, other):
        if not isinstance(other, DateValue):
            return NotImplemented
        return (self.day, self.month, self.year) == (other.day, other.month, other.year)

    def __hash__(self):
        return hash((self.day, self.month, self.year))

    def key(self) -> tuple:
        return (self.year, self.month, self.day or 0)

    def ordinal_days(self) -> int:
        """Days since 0001-01-01 (day 1 if no day)."""
        import datetime
        return datetime.date(self.year, self.month, self.day or 1).toordinal()


def validate_date(day, month, year) -> None:
    if not 1 <= month <= 12:
        raise InvalidDate(f"month {month} out of range")
    if not 1 <= year <= 9999:
        raise InvalidDate(f"year {year} out of range")
    if day is not None:
        last = calendar.monthrange(year, month)[1]
        if not 1 <= day <= last:
            raise InvalidDate(f"{year:04d}-{month:02d} has no day {day}")


def _month_number(raw: str) -> int:
    if raw.isdigit():
        return int(raw)
    return _MONTH_ALIASES[raw.rstrip(".").lower()]


def parse_date(surface: str, pattern: str | None = None) -> DateValue:
    """Parse a date surface in any catalog pattern (or only ``pattern``)."""
    text = surface.strip()
    candidates = [pattern] if pattern else list(DATE_PATTERNS)
    for pid in candidates:
        m = _COMPILED[pid].match(text) or (_COMPILED_LOOSE[pid].match(text) if pid in _COMPILED_LOOSE else None)
        if not m:
            continue
        raw_day = m.groupdict().get("d")
        day = int(re.match(r"\d+", raw_day).group()) if raw_day else None
        if raw_day and not raw_day.isdigit():
            suffix = raw_day[len(str(day)):].lower()
            if suffix != ordinal_suffix(day):
                raise NotADate(f"bad ordinal day in {surface!r}")
        month = _month_number(m.group("m"))
        year = int(m.group("y"))
        if not 1 <= month <= 12:
            raise InvalidDate(f"month {month} out of range in {surface!r}")
        validate_date(day, month, year)
        return DateValue(day, month, year, pid)
    raise NotADate(surface)


def format_date(d: DateValue, pattern: str | None = None) -> str:
    """Render ``d`` in ``pattern`` (default: the pattern it was parsed from)."""
    pattern = pattern or d.source_format
    name = MONTHS[d.month - 1]
    if pattern == "monthname-year":
        return f"{name} {d.year}"
    if d.day is None:
        raise NotADate(f"pattern {pattern} needs a day")
    day, mon, yr = d.day, d.month, d.year
    if pattern == "dmy-hyphen":
        return f"{day:02d}-{mon:02d}-{yr:04d}"
    if pattern == "dmy-slash":
        return f"{day:02d}/{mon:02d}/{yr:04d}"
    if pattern == "dmy-dot":
        return f"{day:02d}.{mon:02d}.{yr:04d}"
    if pattern == "iso-ymd":
        return f"{yr:04d}-{mon:02d}-{day:02d}"
    if pattern == "day-monthname-year":
        return f"{day} {name} {yr}"
    if pattern == "monthname-day-comma-year":
        return f"{name} {day}, {yr}"
    if pattern == "ordinal-day-monthname-comma-year":
        return f"{format_ordinal(day)} {name}, {yr}"
    if pattern == "ordinal-day-monthname-year":
        return f"{format_ordinal(day)} {name} {yr}"
    if pattern == "monthname-ordinal-day-comma-year":
        return f"{name} {format_ordinal(day)}, {yr}"
    raise NotADate(f"unknown date pattern {pattern!r}")
