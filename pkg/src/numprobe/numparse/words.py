"""English number words: cardinals, year readings and ordinals."""

from __future__ import annotations

import re

from .errors import NotANumberPhrase, OutOfRange
from .values import NumericValue

UNITS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"]
TEENS = ["ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
         "seventeen", "eighteen", "nineteen"]
TENS = ["", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]
SCALES = [(10**12, "trillion"), (10**9, "billion"), (10**6, "million"), (10**3, "thousand")]

SMALL = {w: i for i, w in enumerate(UNITS)}
SMALL.update({w: 10 + i for i, w in enumerate(TEENS)})
TENS_VALUE = {w: 10 * i for i, w in enumerate(TENS) if w}
SCALE_VALUE = {w: v for v, w in SCALES}
MAGNITUDE_WORDS = {"thousand": 3, "million": 6, "billion": 9, "trillion": 12}

NUMBER_WORDS = set(SMALL) | set(TENS_VALUE) | set(SCALE_VALUE) | {"hundred"}

ORDINAL_UNITS = ["zeroth", "first", "second", "third", "fourth", "fifth", "sixth", "seventh",
                 "eighth", "ninth"]
ORDINAL_TEENS = ["tenth", "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth",
                 "sixteenth", "seventeenth", "eighteenth", "nineteenth"]
ORDINAL_TENS = {"twentieth": 20, "thirtieth": 30, "fortieth": 40, "fiftieth": 50, "sixtieth": 60,
                "seventieth": 70, "eightieth": 80, "ninetieth": 90}

ORDINAL_WORD_VALUE = {w: i for i, w in enumerate(ORDINAL_UNITS) if i}
ORDINAL_WORD_VALUE.update({w: 10 + i for i, w in enumerate(ORDINAL_TEENS)})
ORDINAL_WORD_VALUE.update(ORDINAL_TENS)
ORDINAL_WORD_VALUE["hundredth"] = 100

MAX_WORDS_MAGNITUDE = 10**15

# cardinal word -> ordinal word for the last token of a phrase
_CARD_TO_ORD = dict(zip(UNITS[1:], ORDINAL_UNITS[1:]))
_CARD_TO_ORD.update(zip(TEENS, ORDINAL_TEENS))
_CARD_TO_ORD.update({TENS[v // 10]: w for w, v in ORDINAL_TENS.items()})
_CARD_TO_ORD.update({w: w + "th" for w in ("hundred", *SCALE_VALUE)})
_ORD_TO_CARD = {o: c for c, o in _CARD_TO_ORD.items()}

_TOKEN_SPLIT = re.compile(r"[\s\-]+")


def _tokens(words: str) -> list[str]:
    return [t for t in _TOKEN_SPLIT.split(words.strip().lower().replace(",", " ")) if t]


def _read_small(tokens, i):
    """Read 0..99 at tokens[i]; return (value, next index) or (None, i)."""
    if i >= len(tokens):
        return None, i
    tok = tokens[i]
    if tok in SMALL:
        return SMALL[tok], i + 1
    if tok in TENS_VALUE:
        value = TENS_VALUE[tok]
        if i + 1 < len(tokens) and tokens[i + 1] in UNITS[1:]:
            return value + SMALL[tokens[i + 1]], i + 2
        return value, i + 1
    return None, i


def _read_integer(tokens: list[str]) -> int:
    """Standard cardinal grammar with hundred/thousand/... multipliers."""
    total = 0
    current = None  # value of the group below the next scale word
    last_scale = None
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "and":
            if current is None and total == 0:
                raise NotANumberPhrase(" ".join(tokens))
            i += 1
            continue
        if tok == "hundred":
            if current is None or current >= 100 or current == 0:
                raise NotANumberPhrase(" ".join(tokens))
            current *= 100
            i += 1
            # the tail under a hundred, e.g. "hundred and forty-four"
            if i < len(tokens) and tokens[i] == "and":
                i += 1
            small, j = _read_small(tokens, i)
            if small is not None:
                if small == 0:
                    raise NotANumberPhrase(" ".join(tokens))
                current += small
                i = j
            continue
        if tok in SCALE_VALUE:
            scale = SCALE_VALUE[tok]
            if current is None or current == 0 or (last_scale is not None and scale >= last_scale):
                raise NotANumberPhrase(" ".join(tokens))
            total += current * scale
            current = None
            last_scale = scale
            i += 1
            continue
        small, j = _read_small(tokens, i)
        if small is None or current is not None:
            raise NotANumberPhrase(" ".join(tokens))
        if small == 0 and (total or j < len(tokens)):
            raise NotANumberPhrase(" ".join(tokens))
        current = small
        i = j
    if current is None and total == 0:
        raise NotANumberPhrase(" ".join(tokens))
    return total + (current or 0)


def _read_year_pair(tokens: list[str]) -> int | None:
    """'nineteen eighty six' -> 1986, 'nineteen oh five' -> 1905."""
    hi, i = _read_small(tokens, 0)
    if hi is None or hi < 10:
        return None
    rest = tokens[i:]
    if len(rest) == 2 and rest[0] in ("oh", "o", "zero") and rest[1] in UNITS[1:]:
        return hi * 100 + SMALL[rest[1]]
    lo, j = _read_small(tokens, i)
    if lo is None or lo < 10 or j != len(tokens):
        return None
    return hi * 100 + lo


def words_to_numeral(words: str) -> NumericValue:
    """Parse an English cardinal phrase exactly.

    Accepts hyphens, "and", a leading "minus"/"negative", a "point" decimal
    tail read digit by digit, and year-pair readings made of two 2-digit
    groups.
    """
    tokens = _tokens(words)
    if not tokens:
        raise NotANumberPhrase(words)
    sign = 1
    if tokens[0] in ("minus", "negative"):
        sign = -1
        tokens = tokens[1:]
    frac_digits = ""
    if "point" in tokens:
        k = tokens.index("point")
        tail = tokens[k + 1:]
        if not tail or any(t not in UNITS and t != "oh" for t in tail):
            raise NotANumberPhrase(words)
        frac_digits = "".join("0" if t == "oh" else str(SMALL[t]) for t in tail)
        tokens = tokens[:k]
        if not tokens:
            raise NotANumberPhrase(words)
    if any(t not in NUMBER_WORDS and t not in ("and", "oh", "o") for t in tokens):
        raise NotANumberPhrase(words)
    try:
        integer = _read_integer(tokens)
    except NotANumberPhrase:
        integer = _read_year_pair(tokens) if not frac_digits else None
        if integer is None:
            raise NotANumberPhrase(words) from None
    value = NumericValue.of(f"{integer}.{frac_digits}" if frac_digits else integer)
    return -value if sign < 0 else value


def _below_thousand(n: int, hyphen: bool) -> str:
    parts = []
    hundreds, rest = divmod(n, 100)
    if hundreds:
        parts.append(f"{UNITS[hundreds]} hundred")
    if rest:
        if hundreds:
            parts.append("and")
        if rest < 10:
            parts.append(UNITS[rest])
        elif rest < 20:
            parts.append(TEENS[rest - 10])
        else:
            tens, units = divmod(rest, 10)
            if units:
                parts.append(TENS[tens] + ("-" if hyphen else " ") + UNITS[units])
            else:
                parts.append(TENS[tens])
    return " ".join(parts)


def integer_to_words(n: int, hyphen: bool = True) -> str:
    if n < 0:
        return "minus " + integer_to_words(-n, hyphen)
    if n >= MAX_WORDS_MAGNITUDE:
        raise OutOfRange(f"{n} is beyond the supported magnitude")
    if n == 0:
        return "zero"
    parts = []
    for scale, name in SCALES:
        if n >= scale:
            head, n = divmod(n, scale)
            parts.append(f"{_below_thousand(head, hyphen)} {name}")
    if n:
        # "one thousand and five" keeps the British "and" before a bare tail
        if parts and n < 100:
            parts.append("and")
        parts.append(_below_thousand(n, hyphen))
    return " ".join(parts)


def numeral_to_words(value, hyphen: bool = True) -> str:
    """Render a number as English words: 144 -> 'one hundred and forty-four'.

    Decimals are read digit by digit after "point"; negatives get "minus".
    """
    value = NumericValue.of(value)
    if abs(value) >= MAX_WORDS_MAGNITUDE:
        raise OutOfRange(f"{value} is beyond the supported magnitude")
    text = value.plain().lstrip("-")
    integer, _, frac = text.partition(".")
    words = integer_to_words(int(integer), hyphen)
    if frac:
        words += " point " + " ".join(UNITS[int(c)] for c in frac)
    return ("minus " + words) if value.sign < 0 else words


def year_to_words(year: int, hyphen: bool = False) -> str:
    """Conversational year reading: 1986 -> 'nineteen eighty six'.

    Years 2000-2009 and exact thousands read as plain cardinals.
    """
    if not 1000 <= year <= 9999:
        return integer_to_words(year, hyphen)
    hi, lo = divmod(year, 100)
    if hi % 10 == 0 and lo < 10:
        return integer_to_words(year, hyphen)
    head = integer_to_words(hi, hyphen)
    if lo == 0:
        return f"{head} hundred"
    if lo < 10:
        return f"{head} oh {UNITS[lo]}"
    return f"{head} {integer_to_words(lo, hyphen)}"


# ordinals -----------------------------------------------------------------

_SUFFIX_RE = re.compile(r"^(\d+)(st|nd|rd|th)$", re.IGNORECASE)


def ordinal_suffix(n: int) -> str:
    if 10 <= n % 100 <= 20:
        return "th"
    return {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")


def format_ordinal(n: int, style: str = "suffix") -> str:
    """Render ordinal ``n`` as '3rd' (style='suffix') or 'third' (style='word')."""
    if n < 1:
        raise OutOfRange("ordinals start at 1")
    if style == "suffix":
        return f"{n}{ordinal_suffix(n)}"
    if style != "word":
        raise ValueError(f"unknown ordinal style {style!r}")
    if n >= MAX_WORDS_MAGNITUDE:
        raise OutOfRange(f"word ordinals are supported below {MAX_WORDS_MAGNITUDE:.0e}")
    if n == 100:
        return "hundredth"
    head, sep, last = integer_to_words(n).rpartition(" ")
    pre, hy, last = last.rpartition("-")
    return f"{head}{sep}{pre}{hy}{_CARD_TO_ORD[last]}"


def parse_ordinal(surface: str) -> int:
    """'3rd' -> 3, 'first' -> 1, 'twenty-first' -> 21."""
    s = surface.strip().lower()
    m = _SUFFIX_RE.match(s)
    if m:
        n = int(m.group(1))
        if n < 1 or m.group(2) != ordinal_suffix(n):
            raise NotANumberPhrase(f"malformed ordinal {surface!r}")
        return n
    if s in ORDINAL_WORD_VALUE:
        return ORDINAL_WORD_VALUE[s]
    parts = _tokens(s)
    if parts and parts[-1] in _ORD_TO_CARD and all(t in NUMBER_WORDS or t == "and" for t in parts[:-1]):
        try:
            n = words_to_numeral(" ".join(parts[:-1] + [_ORD_TO_CARD[parts[-1]]]))
        except NotANumberPhrase:
            n = None
        if n is not None and n.is_integer and n.to_fraction() >= 1:
            return int(n.to_fraction())
    raise NotANumberPhrase(f"not an ordinal: {surface!r}")
