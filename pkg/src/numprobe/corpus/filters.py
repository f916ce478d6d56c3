"""Per-type trigger detection and candidate filtering."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..numparse import MentionKind, NumberMention, NumericValue, scan_mentions
from ..resources import load_reference_tokens
from ..taxonomy import ReasoningType
from .model import Hypothesis

K = MentionKind
RT = ReasoningType

MILLION = NumericValue.of(10**6)
HETEROGENEOUS_KINDS = {K.DATE, K.TIME, K.ORDINAL, K.PERCENTAGE, K.CURRENCY, K.SCIENTIFIC}
RANGE_KINDS = {K.CARDINAL_DIGITS, K.CARDINAL_WORDS, K.MEASURED, K.CURRENCY, K.PERCENTAGE}


@dataclass(frozen=True)
class SignalWord:
    span: tuple[int, int]
    word: str
    direction: str  # "gt": the fact exceeds the threshold; "lt": it falls below
    opposite: str
    threshold_index: int  # index into the hypothesis mentions


@dataclass(frozen=True)
class PositionIndicator:
    span: tuple[int, int]
    rank: int
    direction: str  # "desc", "asc" or "row"
    ordinal: tuple[int, int] | None  # span of the ordinal part, if any
    superlative: tuple[int, int] | None  # span of the superlative part, if any


def _numeric(m: NumberMention) -> bool:
    return isinstance(m.value, NumericValue) and m.kind not in (K.ORDINAL, K.TIME)


def find_signal_words(text: str, mentions=None, tokens=None) -> list[SignalWord]:
    """Comparison signal words that have a numeric threshold shortly after them."""
    tokens = tokens or load_reference_tokens()
    comp = tokens["comparison"]
    window = int(comp.get("window_chars", 40))
    mentions = scan_mentions(text) if mentions is None else mentions
    table = {w: ("gt", o) for w, o in comp["gt"].items()}
    table.update({w: ("lt", o) for w, o in comp["lt"].items()})
    out = []
    pattern = r"\b(" + "|".join(sorted(map(re.escape, table), key=len, reverse=True)) + r")\b"
    for m in re.finditer(pattern, text, re.IGNORECASE):
        for idx, men in enumerate(mentions):
            if men.start >= m.end() and men.start - m.end() <= window and _numeric(men):
                direction, opposite = table[m.group(1).lower()]
                out.append(SignalWord(m.span(1), m.group(1), direction, opposite, idx))
                break
    return out


def find_position_indicators(text: str, mentions=None, tokens=None) -> list[PositionIndicator]:
    tokens = tokens or load_reference_tokens()
    srt = tokens["sorting"]
    sup_dir = {w: "desc" for w in srt["desc"]}
    sup_dir.update({w: "asc" for w in srt["asc"]})
    mentions = scan_mentions(text) if mentions is None else mentions
    ordinals = [m for m in mentions if m.kind is K.ORDINAL]
    sup_re = re.compile(r"\b(" + "|".join(sorted(sup_dir, key=len, reverse=True)) + r")\b", re.IGNORECASE)
    out, used = [], set()
    for m in sup_re.finditer(text):
        ordinal = None
        rank = 1
        before = text[:m.start()]
        for o in ordinals:
            if o.end <= m.start() and re.fullmatch(r"\s+", before[o.end:]) is not None:
                ordinal, rank = o.span, int(o.value)
                used.add(o.span)
        start = ordinal[0] if ordinal else m.start()
        out.append(PositionIndicator((start, m.end()), rank, sup_dir[m.group(1).lower()], ordinal, m.span()))
    for o in ordinals:
        if o.span not in used:
            out.append(PositionIndicator(o.span, int(o.value), "row", o.span, None))
    out.sort(key=lambda p: p.span)
    return out


def _text(h) -> str:
    """Whitespace-collapsed text, so that triggers do not depend on spacing."""
    return " ".join((h.text if isinstance(h, Hypothesis) else h).split())


def _mentions(h) -> tuple[NumberMention, ...]:
    if isinstance(h, Hypothesis) and h.text == _text(h):
        return h.mentions
    return tuple(scan_mentions(_text(h)))


def hedge_before(text: str, start: int, tokens=None) -> bool:
    tokens = tokens or load_reference_tokens()
    hedges = tokens["approximation"]["hedges"]
    return re.search(r"\b(?:" + "|".join(hedges) + r")\s+\Z", text[:start], re.IGNORECASE) is not None


def approximation_targets(text: str, mentions, tokens=None) -> list[int]:
    return [i for i, m in enumerate(mentions)
            if m.is_quantity and m.kind is not K.SCIENTIFIC and abs(m.value) >= NumericValue.of(10)
            and not m.is_year_like() and not hedge_before(text, m.start, tokens)]


def range_targets(mentions) -> list[int]:
    return [i for i, m in enumerate(mentions)
            if m.kind in RANGE_KINDS and m.value > NumericValue.of(0) and not m.is_year_like()]


def heterogeneous_targets(mentions) -> list[int]:
    return [i for i, m in enumerate(mentions)
            if m.kind in HETEROGENEOUS_KINDS
            or (m.kind is K.CARDINAL_DIGITS and abs(m.value) >= MILLION)]


def numeration_targets(mentions) -> list[int]:
    return [i for i, m in enumerate(mentions)
            if m.kind in (K.CARDINAL_DIGITS, K.CARDINAL_WORDS)
            or (m.kind is K.MEASURED and m.format.pattern in ("plain-digits", "words", "words-year"))]


def has_trigger(h, rtype, tokens=None) -> bool:
    """Whether ``h`` (a Hypothesis or plain text) contains the trigger for ``rtype``."""
    rtype = ReasoningType.parse(rtype)
    text, ms = _text(h), _mentions(h)
    if rtype is RT.NUMERATION:
        return bool(numeration_targets(ms))
    if rtype is RT.HETEROGENEOUS:
        return bool(heterogeneous_targets(ms))
    if rtype is RT.NEGATIVE:
        return any(m.kind is K.NEGATIVE for m in ms)
    if rtype is RT.SCALE:
        return any(m.kind is K.MEASURED for m in ms)
    if rtype is RT.COMPARISON:
        return bool(find_signal_words(text, ms, tokens))
    if rtype is RT.APPROXIMATION:
        return bool(approximation_targets(text, ms, tokens))
    if rtype is RT.RANGE:
        return bool(range_targets(ms))
    if rtype is RT.SORTING:
        return bool(find_position_indicators(text, ms, tokens))
    if rtype is RT.ARITHMETIC:
        return isinstance(h, Hypothesis) and h.arith is not None
    if rtype is RT.WORD_PROBLEM:
        return isinstance(h, Hypothesis) and h.answer is not None and h.answer in h.text \
            and any(_numeric(m) for m in ms)
    if rtype is RT.COUNTERFACTUAL:
        return bool(ms)
    raise AssertionError(rtype)


def filter_candidates(hyps, reasoning_type, tokens=None) -> list:
    rtype = ReasoningType.parse(reasoning_type)
    return [h for h in hyps if has_trigger(h, rtype, tokens)]


__all__ = ["PositionIndicator", "SignalWord", "approximation_targets", "filter_candidates",
           "find_position_indicators", "find_signal_words", "has_trigger", "hedge_before",
           "heterogeneous_targets", "numeration_targets", "range_targets"]
