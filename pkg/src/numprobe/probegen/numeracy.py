"""Numeration, heterogeneous-format and negative-number probes."""

from __future__ import annotations

import calendar

from ..corpus import Hypothesis, Table
from ..corpus.filters import heterogeneous_targets, numeration_targets
from ..numparse import (ALTERNATE_FORMAT, DateValue, FormatDescriptor, MentionKind, NumberMention,
                        NumericValue, default_catalog, format_date)
from ..taxonomy import ReasoningType
from .common import (Emitter, comparison_thresholds, display_decimals, fit_unit, from_displayed,
                     require_entail, sample_around, text_edit)
from .model import GenerationConfig, Mode, NoApplicableMention, rng_for

K = MentionKind
MILLION = NumericValue.of(10**6)

HETERO_SUBTYPE = {
    K.DATE: "Date", K.ORDINAL: "Ordinal", K.PERCENTAGE: "Percentage", K.CURRENCY: "Currency",
    K.SCIENTIFIC: "Scientific notation", K.TIME: "Time", K.CARDINAL_DIGITS: "Scientific notation",
}


# numeration -----------------------------------------------------------------

def numeration_format(m: NumberMention, value=None) -> tuple[FormatDescriptor, str]:
    """The converted (digits <-> words) format for ``m`` and the rule id."""
    value = m.value if value is None else value
    fmt = m.format
    shown = fmt.displayed(value)
    if fmt.pattern in ("words", "words-year"):
        out = fmt.with_(pattern="plain-digits", decimals=shown.decimals)
        return fit_unit(m, out, value), "numeration.to_digits"
    yearish = (m.is_year_like() or fmt.pattern == "words-year") and shown.is_integer \
        and 1000 <= int(shown) <= 2099
    out = fmt.with_(pattern="words-year" if yearish else "words", word_hyphen=False, decimals=0)
    if out.suffix and not out.suffix[0].isspace() and m.kind is K.MEASURED:
        out = out.with_(suffix=" " + out.suffix)
    return fit_unit(m, out, value), "numeration.to_words"


def gen_numeration(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig):
    ms = h.mentions
    targets = numeration_targets(ms)
    if not targets:
        raise NoApplicableMention(f"{h.id}: no cardinal mention")
    em = Emitter(h, ReasoningType.NUMERATION, config)
    converted = {}
    for i in targets:
        fmt, rule = numeration_format(ms[i])
        converted[i] = (fmt.render(ms[i].value), rule)

    if mode is Mode.PRESERVE:
        edits = [text_edit(ms[i], surf, rule) for i, (surf, rule) in converted.items()]
        em.emit("preserve", False, em.seed("preserve", 0), edits)
        return em.result()

    require_entail(h, "numeration")
    fixed = comparison_thresholds(h)
    for occ, i in enumerate(targets):
        if em.full("flip"):
            break
        m = ms[i]
        if i in fixed:
            em.skip(f"{m.surface!r} is a comparison threshold")
            continue
        seed = em.seed("flip", occ)
        rng = rng_for(seed)
        new_surface = None
        for _ in range(config.numeration_max_tries):
            shown = sample_around(rng, m.displayed, config.flip_halfwidth, display_decimals(m))
            if shown is None:
                break
            value = from_displayed(m.format, shown)
            if m.kind is K.MEASURED and m.format.pattern.startswith("words") and value < NumericValue.of(0):
                continue
            fmt, _ = numeration_format(m, value)
            surface = fmt.render(value)
            if surface != converted[i][0]:
                new_surface = surface
                break
        if new_surface is None:
            em.skip(f"no distinct replacement for {m.surface!r}")
            continue
        edits = [text_edit(ms[j], new_surface, "numeration.resample") if j == i
                 else text_edit(ms[j], surf, rule) for j, (surf, rule) in converted.items()]
        em.emit("flip", True, seed, edits, {"target": m.surface})
    return em.result()


# heterogeneous ----------------------------------------------------------------

def _currency_symbol(code: str) -> str | None:
    cat = default_catalog()
    symbols = [s for s, c in cat.currency_by_symbol.items() if c == code]
    return min(symbols, key=len) if symbols else None


def hetero_format(m: NumberMention) -> FormatDescriptor | None:
    """Alternative surface format for a heterogeneous mention (None if there is none)."""
    fmt = m.format
    if m.kind is K.DATE:
        alt = ALTERNATE_FORMAT.get(fmt.pattern, fmt.pattern)
        if alt == fmt.pattern or (m.value.day is None and alt != "monthname-year"):
            return None
        return FormatDescriptor(alt)
    if m.kind is K.ORDINAL:
        return fmt.with_(pattern="ordinal-word" if fmt.pattern == "ordinal-suffix" else "ordinal-suffix")
    if m.kind is K.TIME:
        return fmt.with_(pattern="time-12h" if fmt.pattern == "time-24h" else "time-24h")
    if m.kind is K.PERCENTAGE:
        return fmt.with_(suffix=" percent" if fmt.suffix == "%" else "%")
    if m.kind is K.SCIENTIFIC or fmt.pattern == "sci-e-notation":
        return fmt.with_(pattern="grouped-thousands", decimals=m.value.decimals, magnitude="")
    if m.kind is K.CURRENCY:
        if abs(m.value) >= MILLION and not fmt.magnitude:
            return fmt.with_(pattern="sci-e-notation")
        if fmt.prefix:
            return fmt.with_(prefix="", suffix=f" {m.unit}")
        symbol = _currency_symbol(m.unit)
        return fmt.with_(prefix=symbol, suffix="") if symbol else None
    if m.kind is K.CARDINAL_DIGITS and abs(m.value) >= MILLION:
        return fmt.with_(pattern="sci-e-notation", magnitude="")
    return None


def render_with(m: NumberMention, fmt: FormatDescriptor, value) -> str:
    if m.kind is K.DATE:
        return format_date(value, fmt.pattern)
    return fmt.render(value)


def _random_date(rng, d: DateValue, window: int) -> DateValue:
    while True:
        year = d.year + rng.randint(-window, window)
        month = rng.randint(1, 12)
        day = None if d.day is None else rng.randint(1, calendar.monthrange(year, month)[1])
        new = DateValue(day, month, year, d.source_format)
        if new != d:
            return new


def hetero_resample(rng, m: NumberMention, config: GenerationConfig):
    if m.kind is K.DATE:
        return _random_date(rng, m.value, config.date_window_years)
    if m.kind is K.ORDINAL:
        n = int(m.value)
        return NumericValue.of(rng.choice([k for k in range(1, max(2 * n, n + 3) + 1) if k != n]))
    if m.kind is K.TIME:
        h, mins = divmod(int(m.value), 60)
        return NumericValue.of(((h + rng.randint(1, 23)) % 24) * 60 + mins)
    shown = sample_around(rng, m.displayed, config.flip_halfwidth, display_decimals(m))
    return None if shown is None else from_displayed(m.format, shown)


def gen_heterogeneous(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig):
    ms = h.mentions
    targets = [i for i in heterogeneous_targets(ms) if hetero_format(ms[i]) is not None]
    if not targets:
        raise NoApplicableMention(f"{h.id}: no heterogeneous mention with an alternative format")
    em = Emitter(h, ReasoningType.HETEROGENEOUS, config)
    alt = {i: hetero_format(ms[i]) for i in targets}
    base_edits = {i: text_edit(ms[i], render_with(ms[i], alt[i], ms[i].value), "hetero.reformat")
                  for i in targets}
    subtypes = [HETERO_SUBTYPE[ms[i].kind] for i in targets]

    if mode is Mode.PRESERVE:
        em.emit("preserve", False, em.seed("preserve", 0), base_edits.values(), {"subtypes": subtypes})
        return em.result()

    require_entail(h, "heterogeneous")
    fixed = comparison_thresholds(h)
    for occ, i in enumerate(targets):
        if em.full("flip"):
            break
        if i in fixed:
            em.skip(f"{ms[i].surface!r} is a comparison threshold")
            continue
        seed = em.seed("flip", occ)
        value = hetero_resample(rng_for(seed), ms[i], config)
        if value is None:
            em.skip(f"no replacement value for {ms[i].surface!r}")
            continue
        edits = dict(base_edits)
        edits[i] = text_edit(ms[i], render_with(ms[i], alt[i], value), "hetero.resample")
        em.emit("flip", True, seed, edits.values(), {"subtypes": [HETERO_SUBTYPE[ms[i].kind]]})
    return em.result()


# negative numbers -------------------------------------------------------------

def gen_negative(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig):
    ms = h.mentions
    targets = [i for i, m in enumerate(ms) if m.kind is K.NEGATIVE]
    if not targets:
        raise NoApplicableMention(f"{h.id}: no negative number")
    em = Emitter(h, ReasoningType.NEGATIVE, config)
    if mode is Mode.FLIP:
        require_entail(h, "negative")
    submode = mode.value
    fixed = comparison_thresholds(h) if mode is Mode.FLIP else set()
    for occ, i in enumerate(targets):
        if em.full(submode):
            break
        m = ms[i]
        if i in fixed:
            em.skip(f"{m.surface!r} is a comparison threshold")
            continue
        seed = em.seed(submode, occ)
        if mode is Mode.PRESERVE:
            if m.format.prefix == "-":
                word = ("minus ", "negative ")[seed & 1]
                new, rule = m.format.with_(prefix=word).render(m.value), "negative.spell_sign"
            else:
                fmt = m.format.with_(prefix="-")
                if fmt.pattern.startswith("words"):
                    fmt = fmt.with_(pattern="plain-digits", decimals=m.displayed.decimals)
                new, rule = fmt.render(m.value), "negative.symbol_sign"
        else:
            new, rule = m.format.with_(prefix="").render(abs(m.value)), "negative.drop_sign"
        em.emit(submode, mode is Mode.FLIP, seed, [text_edit(m, new, rule)])
    return em.result()
