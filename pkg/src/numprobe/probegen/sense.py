"""Scale, comparison, approximation and range probes."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from ..corpus import Hypothesis, Label, Table, find_signal_words, ground_mention
from ..corpus.filters import approximation_targets, hedge_before, range_targets
from ..numparse import (FormatDescriptor, MentionKind, NumberMention, NumericValue, default_catalog,
                        granularity_exp, parse_mention, parse_number, round_magnitude)
from ..taxonomy import ReasoningType
from .common import (Emitter, comparison_thresholds, display_decimals, fit_unit, from_displayed,
                     is_terminating, require_entail, render_measure, sample_factor, suffix_style, text_edit)
from .model import EditRecord, GenerationConfig, Mode, NoApplicableMention, rng_for

K = MentionKind
HEDGES = ("about ", "approximately ")


# scale --------------------------------------------------------------------------

def _conversion_target(unit):
    cat = default_catalog()
    if unit.counterpart:
        return cat.unit(unit.counterpart)
    return cat.next_larger(unit) or cat.next_smaller(unit)


def _exact_convert(value: NumericValue, src, dst) -> Fraction:
    return value.to_fraction() * src.factor / dst.factor


def _scale_preserve(em: Emitter, m: NumberMention, occ: int):
    cat = default_catalog()
    unit = cat.unit(m.unit)
    style = suffix_style(m)
    spaced = m.format.suffix.startswith(" ")

    adj = cat.adjacent(unit)
    if adj is None:
        em.skip(f"{unit.id} has no adjacent unit")
    else:
        exact = _exact_convert(m.value, unit, adj)
        if is_terminating(exact):
            new = render_measure(NumericValue.of(exact), adj, style, spaced,
                                 grouped=m.format.pattern == "grouped-thousands")
            em.emit("convert-preserve", False, em.seed("convert-preserve", occ),
                    [text_edit(m, new, "scale.convert")], {"unit": adj.id})
        else:
            em.skip(f"{m.surface!r} has no finite decimal form in {adj.id}")

    if style == "word" and m.format.pattern.startswith("words"):
        em.skip(f"{m.surface!r}: symbols after spelled-out numbers are not idiomatic")
        return
    new_style = "symbol" if style == "word" else "word"
    new = m.format.with_(suffix=" " + unit.surface(new_style, m.value)).render(m.value)
    em.emit("map-preserve", False, em.seed("map-preserve", occ), [text_edit(m, new, "scale.alias")])


def _scale_flip(em: Emitter, m: NumberMention, occ: int, config: GenerationConfig, hedged=False):
    cat = default_catalog()
    unit = cat.unit(m.unit)

    target = _conversion_target(unit)
    seed = em.seed("convert-flip", occ)
    rng = rng_for(seed)
    truth = _exact_convert(m.value, unit, target)
    # a slightly wrong conversion can still pass as "about" the truth
    for _ in range(0 if hedged else 8):
        factor = sample_factor(rng, config.scale_error_low, config.scale_error_high)
        wrong = NumericValue.of(truth * factor).quantize(2)
        if not wrong.is_zero and abs(wrong.to_fraction() - truth) >= abs(truth) / 20:
            new = render_measure(wrong, target, "symbol", True)
            shown_truth = NumericValue.of(truth).quantize(2)
            em.emit("convert-flip", True, seed, [text_edit(m, new, "scale.convert_corrupt")],
                    {"unit": target.id, "true_value": shown_truth.plain(), "factor": str(factor)})
            break
    else:
        em.skip(f"no corrupted conversion for {m.surface!r}")

    seed = em.seed("map-flip", occ)
    rng = rng_for(seed)
    style = suffix_style(m)
    others = sorted((u for u in cat.measure_units() if u.family != unit.family), key=lambda u: u.id)
    rng.shuffle(others)
    for other in others:
        sep = m.format.suffix[: len(m.format.suffix) - len(m.format.suffix.lstrip())]
        new = m.format.with_(suffix=sep + other.surface(style, m.value)).render(m.value)
        back = parse_mention(new)
        if back is not None and back.unit == other.id:
            em.emit("map-flip", True, seed, [text_edit(m, new, "scale.swap_family")], {"unit": other.id})
            return
    em.skip(f"no other-family unit renders cleanly for {m.surface!r}")


def gen_scale(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig):
    ms = h.mentions
    targets = [i for i, m in enumerate(ms) if m.kind is K.MEASURED]
    if not targets:
        raise NoApplicableMention(f"{h.id}: no measured quantity")
    em = Emitter(h, ReasoningType.SCALE, config)
    if mode is Mode.FLIP and h.label is not Label.ENTAIL:
        raise NoApplicableMention(f"{h.id}: scale flips are only derived from entailed hypotheses")
    fixed = comparison_thresholds(h) if mode is Mode.FLIP else set()
    for occ, i in enumerate(targets[: config.max_probes_per_hypothesis]):
        if i in fixed:
            em.skip(f"{ms[i].surface!r} is a comparison threshold")
        elif mode is Mode.PRESERVE:
            _scale_preserve(em, ms[i], occ)
        else:
            _scale_flip(em, ms[i], occ, config, hedge_before(h.text, ms[i].start))
    return em.result()


# comparison ---------------------------------------------------------------------

def match_case(template: str, word: str) -> str:
    if template.isupper() and len(template) > 1:
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def comparison_holds(direction: str, fact, threshold) -> bool:
    return fact > threshold if direction == "gt" else fact < threshold


def move_threshold(rng, m: NumberMention, fact: NumericValue) -> NumericValue | None:
    """Move the threshold further from the fact, by at least 10% of their distance."""
    shown = m.displayed
    x = m.value
    down = x < fact
    if m.is_year_like():
        step, ks = Fraction(1), list(range(1, 11))
    else:
        dec = display_decimals(m)
        mag = max(0, math.floor(math.log10(abs(float(shown))))) - 1 if not shown.is_zero else 0
        step = Fraction(1, 10**dec) * Fraction(10) ** max(0, mag)
        ks = list(range(1, 6))
    gap = abs(fact.to_fraction() - x.to_fraction()) / Fraction(10**m.format.magnitude_exp)
    while step * ks[-1] < gap / 10:
        step *= 10
    ks = [k for k in ks if step * k >= gap / 10]
    sx = shown.to_fraction()
    options = [sx - k * step if down else sx + k * step for k in ks]
    if sx > 0:
        options = [o for o in options if o > 0]
    if not options:
        return None
    return from_displayed(m.format, NumericValue.of(rng.choice(options)))


def gen_comparison(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig, tokens=None):
    if t is None:
        raise NoApplicableMention(f"{h.id}: comparison needs the premise table")
    ms = h.mentions
    signals = find_signal_words(h.text, ms, tokens)
    if not signals:
        raise NoApplicableMention(f"{h.id}: no comparison signal word")
    em = Emitter(h, ReasoningType.COMPARISON, config)
    grounded = [ground_mention(h, t, sw.threshold_index) for sw in signals]
    truths = [None if g is None else comparison_holds(sw.direction, g[0], ms[sw.threshold_index].value)
              for sw, g in zip(signals, grounded)]
    known = [v for v in truths if v is not None]
    if known and all(known) != (h.label is Label.ENTAIL):
        raise NoApplicableMention(f"{h.id}: the grounded comparisons disagree with the gold label")
    for occ, sw in enumerate(signals):
        m = ms[sw.threshold_index]
        if grounded[occ] is None:
            em.skip(f"threshold {m.surface!r} not grounded in the table")
            continue
        fact, coord, _ = grounded[occ]
        if fact == m.value:
            em.skip(f"threshold {m.surface!r} equals the table value")
            continue
        others = truths[:occ] + truths[occ + 1:]
        # a flip must turn the whole sentence around, not just this clause
        can_flip = h.label is Label.ENTAIL or (not truths[occ] and None not in others and all(others))
        if mode is Mode.FLIP and not can_flip:
            em.skip(f"flipping {sw.word!r} would not change the sentence's truth")
            continue
        meta = {"fact": fact.plain(), "cell": list(coord), "direction": sw.direction}
        word_edit = EditRecord(sw.span, sw.word, match_case(sw.word, sw.opposite), "comparison.opposite")
        if mode is Mode.PRESERVE:
            submodes = ["number-preserve"]
        else:
            submodes = ["word-flip", "both-flip"]
        for sub in submodes:
            if em.full(sub):
                continue
            seed = em.seed(sub, occ)
            edits = []
            if sub != "number-preserve":
                edits.append(word_edit)
            if sub != "word-flip":
                moved = move_threshold(rng_for(seed), m, fact)
                if moved is None:
                    em.skip(f"cannot move threshold {m.surface!r}")
                    continue
                edits.append(text_edit(m, fit_unit(m, m.format, moved).render(moved), "comparison.threshold"))
            em.emit(sub, sub != "number-preserve", seed, edits, meta)
    return em.result()


# approximation ------------------------------------------------------------------

def gen_approximation(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig, tokens=None):
    ms = h.mentions
    targets = approximation_targets(h.text, ms, tokens)
    if not targets:
        raise NoApplicableMention(f"{h.id}: no value of magnitude 10 or more to approximate")
    em = Emitter(h, ReasoningType.APPROXIMATION, config)
    # rounding or widening a false value can land on the true one
    require_entail(h, "approximation")
    sub = mode.value
    fixed = comparison_thresholds(h, tokens) if mode is Mode.FLIP else set()
    for occ, i in enumerate(targets):
        if em.full(sub):
            break
        m = ms[i]
        if i in fixed:
            em.skip(f"{m.surface!r} is a comparison threshold")
            continue
        rounded = round_magnitude(m.value, config.rounding_tiers)
        if rounded == m.value:
            em.skip(f"{m.surface!r} is already round")
            continue
        g = granularity_exp(m.value, config.rounding_tiers)
        seed = em.seed(sub, occ)
        rng = rng_for(seed)
        hedge = HEDGES[em.count(sub) % 2]
        if mode is Mode.PRESERVE:
            value, rule = rounded, "approximation.round"
        else:
            value = misround(rng, m.value, rounded, g, config.approx_max_steps)
            if value is None:
                em.skip(f"no wrong approximation for {m.surface!r}")
                continue
            rule = "approximation.misround"
        shown_dec = max(0, -(g - m.format.magnitude_exp))
        fmt = m.format.with_(decimals=shown_dec) if m.format.pattern in ("plain-digits", "grouped-thousands") \
            else m.format
        new = hedge + fit_unit(m, fmt, value).render(value)
        em.emit(sub, mode is Mode.FLIP, seed, [text_edit(m, new, rule)],
                {"granularity": g, "rounded": rounded.plain()})
    return em.result()


def misround(rng, value: NumericValue, rounded: NumericValue, g: int, max_steps: int):
    """``rounded`` moved 1..max_steps granularity steps, at least one full step from ``value``."""
    unit = Fraction(10) ** g
    v, r = value.to_fraction(), rounded.to_fraction()
    options = [r + s * k * unit for k in range(1, max_steps + 1) for s in (-1, 1)]
    options = [o for o in options if abs(o - v) >= unit and o != 0 and (o > 0) == (r > 0)]
    return NumericValue.of(rng.choice(options)) if options else None


# range --------------------------------------------------------------------------

def _uniform_grid(rng, lo: Fraction, hi: Fraction, step: Fraction) -> Fraction:
    a, b = max(1, math.ceil(lo / step)), max(1, math.floor(hi / step))
    return rng.randint(a, max(a, b)) * step


def range_bounds(rng, shown: NumericValue, decimals: int,
                 config: GenerationConfig) -> tuple[Fraction, Fraction] | None:
    """``(a, b)`` around ``shown`` with ``0 < a``; ``None`` when no radius keeps ``a`` positive."""
    n = shown.to_fraction()
    lo_r, hi_r = config.range_small_radius
    if 1 <= n < 10:
        top = min(hi_r, math.ceil(n) - 1)
        if top < lo_r:
            return None
        r1, r2 = rng.randint(lo_r, top), rng.randint(lo_r, top)
        return n - r1, n + r2
    f_lo, f_hi = (Fraction(str(x)) for x in config.range_fraction)
    step = Fraction(1, 10**decimals)
    r1 = _uniform_grid(rng, n * f_lo, n * f_hi, step)
    r2 = _uniform_grid(rng, n * f_lo, n * f_hi, step)
    return (n - r1, n + r2) if r1 < n else None


def render_range(m: NumberMention, a: Fraction, b: Fraction, decimals: int) -> str:
    fmt = fit_unit(m, m.format, NumericValue.of(b) * NumericValue.of(10**m.format.magnitude_exp))
    mag = f" {fmt.magnitude}" if fmt.magnitude else ""
    core = fmt.with_(prefix="", suffix="", magnitude="", decimals=decimals)
    sa, sb = core.render(NumericValue.of(a)), core.render(NumericValue.of(b))
    sep = " and " if fmt.pattern.startswith("words") or fmt.pattern == "sci-e-notation" else "-"
    return f"between {fmt.prefix}{sa}{sep}{sb}{mag}{fmt.suffix}"


_SEP = re.compile(r"-| and ")


def parse_range(surface: str, m: NumberMention) -> tuple[NumericValue, NumericValue] | None:
    """Bounds of a 'between a-b' surface written in the style of mention ``m``.

    Word numbers contain "and" and hyphens themselves, so every separator
    position is tried and the first split where both sides parse wins.
    """
    if surface[:8].lower() != "between ":
        return None
    body = surface[8:]
    for fmt in dict.fromkeys((m.format, fit_unit(m, m.format, 1), fit_unit(m, m.format, 2))):
        tail = (f" {fmt.magnitude}" if fmt.magnitude else "") + fmt.suffix
        if not body.startswith(fmt.prefix) or not body.endswith(tail):
            continue
        for sep in _SEP.finditer(body):
            a = body[len(fmt.prefix):sep.start()]
            b = body[sep.end():len(body) - len(tail)] if tail else body[sep.end():]
            try:
                return parse_number(a).scaleb(fmt.magnitude_exp), parse_number(b).scaleb(fmt.magnitude_exp)
            except ValueError:
                continue
    return None


def gen_range(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig, tokens=None):
    if mode is not Mode.PRESERVE:
        raise ValueError("range probes are label-preserving only")
    ms = h.mentions
    targets = range_targets(ms)
    if not targets:
        raise NoApplicableMention(f"{h.id}: no positive quantity for a range")
    require_entail(h, "range")
    em = Emitter(h, ReasoningType.RANGE, config)
    fixed = comparison_thresholds(h, tokens)
    for occ, i in enumerate(targets):
        if em.full("preserve"):
            break
        m = ms[i]
        if i in fixed or hedge_before(h.text, m.start, tokens):
            em.skip(f"{m.surface!r} is already a bound or an approximation")
            continue
        seed = em.seed("preserve", occ)
        dec = display_decimals(m)
        bounds = range_bounds(rng_for(seed), m.displayed, dec, config)
        if bounds is None:
            em.skip(f"{m.surface!r} is too small for a range with a positive lower bound")
            continue
        a, b = bounds
        scale = Fraction(10) ** m.format.magnitude_exp
        new = render_range(m, a, b, dec)
        em.emit("preserve", False, seed, [text_edit(m, new, "range.widen")],
                {"low": NumericValue.of(a * scale).plain(), "high": NumericValue.of(b * scale).plain()})
    return em.result()
