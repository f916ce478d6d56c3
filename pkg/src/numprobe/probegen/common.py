"""Shared helpers for the generators: probe assembly, sampling, rendering."""

from __future__ import annotations

import math
from dataclasses import replace
from fractions import Fraction

from ..corpus import Hypothesis, Label, Table, find_signal_words
from ..numparse import FormatDescriptor, MentionKind, NumberMention, NumericValue, default_catalog
from ..taxonomy import ReasoningType
from .model import EditRecord, GenerationConfig, NoApplicableMention, Probe, apply_edits, derive_seed, rng_for


class Emitter:
    """Collects the probes for one (hypothesis, type, mode) call."""

    def __init__(self, h: Hypothesis, rtype: ReasoningType, config: GenerationConfig):
        self.h, self.rtype, self.config = h, rtype, config
        self.probes: list[Probe] = []
        self.reasons: list[str] = []
        self._count: dict[str, int] = {}

    def seed(self, submode: str, occurrence: int) -> int:
        return derive_seed(self.config.master_seed, self.h.id, self.rtype, submode, occurrence)

    def count(self, submode: str) -> int:
        return self._count.get(submode, 0)

    def full(self, submode: str) -> bool:
        return self.count(submode) >= self.config.max_probes_per_hypothesis

    def next_probe_id(self, submode: str) -> str:
        return f"{self.h.id}:{self.rtype.slug}:{submode}:{self._count.get(submode, 0)}"

    def emit(self, submode: str, flip: bool, seed: int, edits, meta=None, table_ref=None) -> Probe:
        edits = tuple(sorted((self._sentence_case(e) for e in edits), key=lambda e: (e.target, e.span)))
        probe_id = self.next_probe_id(submode)
        self._count[submode] = self._count.get(submode, 0) + 1
        label = self.h.label.opposite if flip else self.h.label
        probe = Probe(
            probe_id=probe_id, base_id=self.h.id, type=self.rtype,
            submode=submode, flip=flip, expected_label=label, text=apply_edits(self.h.text, edits),
            edits=edits, seed=seed, table_ref=table_ref, meta=dict(meta or {}))
        self.probes.append(probe)
        return probe

    def _sentence_case(self, e: EditRecord) -> EditRecord:
        """Keep a capital at the start of the sentence when the first word is rewritten."""
        if e.target == "text" and e.span[0] == 0 and e.new[:1].islower() and not e.old[:1].islower():
            return replace(e, new=e.new[0].upper() + e.new[1:])
        return e

    def skip(self, reason: str) -> None:
        self.reasons.append(reason)

    def result(self) -> list[Probe]:
        if not self.probes:
            reason = "; ".join(dict.fromkeys(self.reasons)) or "no applicable mention"
            raise NoApplicableMention(f"{self.h.id}: {self.rtype.value}: {reason}")
        return self.probes


def require_entail(h: Hypothesis, what: str) -> None:
    if h.label is not Label.ENTAIL:
        raise NoApplicableMention(f"{h.id}: {what} probes need an entailed hypothesis")


def comparison_thresholds(h: Hypothesis, tokens=None) -> set[int]:
    """Mentions that serve as a comparison threshold; moving them does not reliably flip truth."""
    return {sw.threshold_index for sw in find_signal_words(h.text, h.mentions, tokens)}


def fit_unit(m: NumberMention, fmt: FormatDescriptor, value) -> FormatDescriptor:
    """Re-inflect a spelled-out unit name for ``value`` ("1 hour", "2 hours")."""
    if m.kind is not MentionKind.MEASURED or not m.unit:
        return fmt
    unit = default_catalog().unit(m.unit)
    word = fmt.suffix.strip()
    if word.lower() not in (unit.singular, unit.plural):
        return fmt
    lead = fmt.suffix[: len(fmt.suffix) - len(fmt.suffix.lstrip())] or " "
    return fmt.with_(suffix=lead + unit.surface("word", NumericValue.of(value)))


def text_edit(m: NumberMention, new: str, rule: str) -> EditRecord:
    return EditRecord(m.span, m.surface, new, rule)


# numeric sampling ---------------------------------------------------------

def grid_sample(rng, center: Fraction, lo: Fraction, hi: Fraction, decimals: int,
                exclude=(), max_extra_decimals: int = 2) -> NumericValue | None:
    """Uniform value on the ``10**-decimals`` grid inside [lo, hi], avoiding ``exclude``.

    If the grid has no admissible point one more decimal is allowed, up to
    ``max_extra_decimals`` times.
    """
    excluded = {Fraction(NumericValue.of(x).to_fraction()) for x in exclude}
    excluded.add(center)
    for extra in range(max_extra_decimals + 1):
        step = Fraction(1, 10 ** (decimals + extra))
        a, b = math.ceil(lo / step), math.floor(hi / step)
        if b < a:
            continue
        choices = b - a + 1
        # at most len(excluded) grid points are ruled out
        if choices <= len(excluded):
            pool = [k for k in range(a, b + 1) if k * step not in excluded]
            if not pool:
                continue
            k = rng.choice(pool)
        else:
            while True:
                k = rng.randint(a, b)
                if k * step not in excluded:
                    break
        return NumericValue.of(k * step)
    return None


def sample_around(rng, x: NumericValue, halfwidth, decimals: int, exclude=()) -> NumericValue | None:
    """A value in [x - hw*|x|, x + hw*|x|] other than ``x``; 1-9 when x is zero."""
    fx = x.to_fraction()
    if fx == 0:
        return NumericValue.of(rng.randint(1, 9))
    hw = Fraction(str(halfwidth))
    lo, hi = sorted((fx * (1 - hw), fx * (1 + hw)))
    return grid_sample(rng, fx, lo, hi, decimals, exclude)


def sample_factor(rng, low: tuple, high: tuple) -> Fraction:
    """A multiplicative factor from the union of two intervals, 4 decimals."""
    lo, hi = low if rng.random() < 0.5 else high
    a, b = int(Fraction(lo) * 10000), int(Fraction(hi) * 10000)
    return Fraction(rng.randint(a, b), 10000)


def display_decimals(m: NumberMention) -> int:
    """Decimal places of the number as written (after removing the magnitude word)."""
    return max(m.format.decimals, m.displayed.decimals)


def from_displayed(fmt: FormatDescriptor, shown: NumericValue) -> NumericValue:
    return shown.scaleb(fmt.magnitude_exp)


def is_terminating(f: Fraction) -> bool:
    d = f.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def unit_word(unit, value: NumericValue, style: str) -> str:
    return unit.surface(style, value)


def suffix_style(m: NumberMention) -> str:
    """'symbol' when the unit is written as its symbol, else 'word'."""
    cat = default_catalog()
    unit = cat.unit(m.unit)
    return "symbol" if m.format.suffix.strip() == unit.symbol else "word"


def render_measure(value: NumericValue, unit, style: str, spaced: bool, grouped: bool = False) -> str:
    pattern = "grouped-thousands" if grouped and abs(value) >= NumericValue.of(1000) else "plain-digits"
    core = FormatDescriptor(pattern, decimals=value.decimals).render(value)
    sep = " " if spaced or style == "word" else ""
    return f"{core}{sep}{unit.surface(style, value)}"


def table_for(tables: dict, h: Hypothesis) -> Table | None:
    return tables.get(h.table_id)
