"""Tie hypothesis number mentions to table cells.

A link is exact when the two values are equal, possibly after one declared
conversion (unit change, or reading a date's year).  Quantities within 15%
of each other may also link; those links carry ``approximate=True``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..numparse import (Catalog, DimensionMismatch, MentionKind, NumberMention, NumericValue,
                        UnknownUnit, convert_unit, default_catalog)
from .errors import NoNumericCells
from .model import Coord, Hypothesis, Table

K = MentionKind
APPROX_TOLERANCE = 0.15


@dataclass(frozen=True)
class MentionLink:
    hyp_index: int
    cell: Coord
    cell_index: int
    conversion: str | None = None
    approximate: bool = False
    gap: float = 0.0


def comparable_value(hm: NumberMention, cm: NumberMention, catalog: Catalog | None = None):
    """The cell mention's value expressed in the hypothesis mention's terms.

    Returns ``(value, conversion)`` or ``None`` when the two cannot be compared.
    """
    catalog = catalog or default_catalog()
    if hm.kind is K.DATE:
        return (cm.value, None) if cm.kind is K.DATE else None
    if cm.kind is K.DATE:
        if hm.is_year_like():
            return NumericValue.of(cm.value.year), "date->year"
        return None
    if hm.kind is K.TIME or cm.kind is K.TIME:
        return (cm.value, None) if hm.kind is cm.kind else None
    if hm.kind is K.ORDINAL or cm.kind is K.ORDINAL:
        return (cm.value, None) if hm.kind is cm.kind else None
    if hm.kind is K.PERCENTAGE and cm.kind not in (K.PERCENTAGE, K.CARDINAL_DIGITS, K.CARDINAL_WORDS):
        return None
    hu, cu = hm.unit, cm.unit
    if hu and cu and hu != cu:
        try:
            return convert_unit(cm.value, cu, hu, catalog), f"unit:{cu}->{hu}"
        except (DimensionMismatch, UnknownUnit):
            return None
    return cm.value, None


def _rel_gap(a: NumericValue, b: NumericValue) -> float:
    fa, fb = a.to_fraction(), b.to_fraction()
    if fb == 0:
        return 0.0 if fa == 0 else float("inf")
    return float(abs(fa - fb) / abs(fb))


def link_mentions(h: Hypothesis, t: Table, catalog: Catalog | None = None,
                  tolerance: float = APPROX_TOLERANCE) -> list[MentionLink]:
    """Greedy matching: exact links first (left to right), then approximate ones.

    Each hypothesis mention and each cell mention is used at most once.
    """
    catalog = catalog or default_catalog()
    hms = h.mentions
    cells = [((i, j), k, cm) for i, j in t.fact_coords() for k, cm in enumerate(t.cell(i, j).mentions)]
    used_cells: set[tuple[Coord, int]] = set()
    links: dict[int, MentionLink] = {}

    for hi, hm in enumerate(hms):
        for coord, ci, cm in cells:
            if (coord, ci) in used_cells:
                continue
            cv = comparable_value(hm, cm, catalog)
            if cv is not None and cv[0] == hm.value:
                links[hi] = MentionLink(hi, coord, ci, cv[1])
                used_cells.add((coord, ci))
                break

    for hi, hm in enumerate(hms):
        if hi in links or not isinstance(hm.value, NumericValue) or hm.kind is K.ORDINAL:
            continue
        best = None
        for coord, ci, cm in cells:
            if (coord, ci) in used_cells:
                continue
            cv = comparable_value(hm, cm, catalog)
            if cv is None or not isinstance(cv[0], NumericValue):
                continue
            gap = _rel_gap(hm.value, cv[0])
            if gap <= tolerance and (best is None or gap < best[0]):
                best = (gap, coord, ci, cv[1])
        if best is not None:
            gap, coord, ci, conv = best
            links[hi] = MentionLink(hi, coord, ci, conv, approximate=True, gap=gap)
            used_cells.add((coord, ci))
    return [links[i] for i in sorted(links)]


# grounding for comparisons -----------------------------------------------------

_STOP = {"the", "a", "an", "of", "in", "on", "at", "by", "to", "and", "or", "is", "was", "for", "with"}


def _content_words(text: str) -> set[str]:
    return {w for w in re.findall(r"[a-z0-9]+", text.lower()) if w not in _STOP}


def _stem(w: str) -> str:
    return re.sub(r"(?:ing|ed|es|s)$", "", w) if len(w) > 4 else w


def ground_mention(h: Hypothesis, t: Table, hyp_index: int, catalog: Catalog | None = None):
    """The table value a hypothesis mention is being compared against.

    Looks for a fact cell whose key (infobox key or grid header, plus the row
    label for grids) is fully named in the hypothesis and whose content is
    comparable with the mention; then for a comparable cell in a row the
    hypothesis names; finally for an (approximate) link.
    Returns ``(value, coord, conversion)`` or ``None``.
    """
    catalog = catalog or default_catalog()
    hm = h.mentions[hyp_index]
    hyp_words = {_stem(w) for w in _content_words(h.text)}
    best = None
    for i, j in t.fact_coords():
        key_words = {_stem(w) for w in _content_words(t.key_text(i, j))}
        if t.is_grid:
            label = t.row_label(i)
            if label is None or not {_stem(w) for w in _content_words(label)} <= hyp_words:
                continue
        if not key_words or not key_words <= hyp_words:
            continue
        for cm in t.cell(i, j).mentions:
            cv = comparable_value(hm, cm, catalog)
            if cv is not None and isinstance(cv[0], NumericValue):
                score = len(key_words)
                if best is None or score > best[0]:
                    best = (score, cv[0], (i, j), cv[1])
                break
    if best is not None:
        return best[1], best[2], best[3]
    # a comparable cell in a row the hypothesis names, closest value first
    if t.is_grid:
        named = []
        for i, j in t.fact_coords():
            label = t.row_label(i)
            if label is None or not {_stem(w) for w in _content_words(label)} <= hyp_words:
                continue
            for cm in t.cell(i, j).mentions:
                cv = comparable_value(hm, cm, catalog)
                if cv is not None and isinstance(cv[0], NumericValue) and isinstance(hm.value, NumericValue):
                    named.append((_rel_gap(hm.value, cv[0]), (i, j), cv))
                    break
        if named:
            _, coord, cv = min(named, key=lambda x: (x[0], x[1]))
            return cv[0], coord, cv[1]
    for link in link_mentions(h, t, catalog):
        if link.hyp_index == hyp_index:
            cm = t.cell(*link.cell).mentions[link.cell_index]
            value, conv = comparable_value(hm, cm, catalog)
            return value, link.cell, conv
    return None


# columns -------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericColumn:
    values: tuple[NumericValue, ...]
    rows: tuple[int, ...]
    skipped: tuple[tuple[int, str], ...]  # (row, reason)


def cell_number(cell) -> NumberMention | None:
    """The cell's sole mention, if it is a plain quantity."""
    ms = cell.mentions
    if len(ms) == 1 and ms[0].is_quantity:
        return ms[0]
    return None


def extract_numeric_column(t: Table, column: int) -> NumericColumn:
    cells = t.column(column)
    values, rows, skipped = [], [], []
    for r, cell in enumerate(cells):
        m = cell_number(cell)
        if m is None:
            skipped.append((r, "no mention" if not cell.mentions else "not a sole numeric mention"))
        else:
            values.append(m.value)
            rows.append(r)
    if not values:
        raise NoNumericCells(f"column {column} of table {t.id} has no numeric cells")
    return NumericColumn(tuple(values), tuple(rows), tuple(skipped))


def rank_value(values, rank: int, direction: str) -> NumericValue:
    """The ``rank``-th (1-based) value when sorted per ``direction`` ('desc', 'asc' or 'row')."""
    if direction == "desc":
        ordered = sorted(values, key=lambda v: v.to_fraction(), reverse=True)
    elif direction == "asc":
        ordered = sorted(values, key=lambda v: v.to_fraction())
    else:
        ordered = list(values)
    if not 1 <= rank <= len(ordered):
        raise IndexError(f"rank {rank} outside column of length {len(ordered)}")
    return ordered[rank - 1]


__all__ = ["APPROX_TOLERANCE", "MentionLink", "NumericColumn", "cell_number", "comparable_value",
           "extract_numeric_column", "ground_mention", "link_mentions", "rank_value"]
