"""Sorting, arithmetic, word-problem and counterfactual-table probes."""

from __future__ import annotations

import re

from ..corpus import Hypothesis, Label, Table, find_position_indicators, link_mentions
from ..corpus.linking import cell_number, comparable_value, extract_numeric_column, rank_value
from ..corpus.errors import NoNumericCells
from ..numparse import MentionKind, NumericValue, format_ordinal
from ..resources import load_reference_tokens
from ..taxonomy import ReasoningType
from .common import Emitter, comparison_thresholds, display_decimals, from_displayed, require_entail, sample_factor, text_edit
from .model import EditRecord, GenerationConfig, Mode, NoApplicableMention, Probe, apply_cell_edits, rng_for
from .sense import match_case

K = MentionKind


# sorting ----------------------------------------------------------------------

def _mention_at(ms, span):
    for i, m in enumerate(ms):
        if m.span == span:
            return i, m
    return None, None


def _ordinal_style_swap(m) -> str:
    style = "word" if m.format.pattern == "ordinal-suffix" else "suffix"
    new = format_ordinal(int(m.value), style)
    return match_case(m.surface, new)


def _sorting_preserve(em: Emitter, h: Hypothesis, indicators, synonyms):
    ms = h.mentions
    for occ, ind in enumerate(indicators):
        if em.full("preserve"):
            break
        edits = []
        if ind.superlative is not None:
            s, e = ind.superlative
            word = h.text[s:e]
            syn = synonyms.get(word.lower())
            if syn:
                edits.append(EditRecord((s, e), word, match_case(word, syn), "sorting.synonym"))
        if ind.ordinal is not None:
            _, m = _mention_at(ms, ind.ordinal)
            if m is not None:
                edits.append(text_edit(m, _ordinal_style_swap(m), "sorting.ordinal_style"))
        if not edits:
            em.skip(f"no synonym for position word {h.text[ind.span[0]:ind.span[1]]!r}")
            continue
        em.emit("preserve", False, em.seed("preserve", occ), edits,
                {"rank": ind.rank, "direction": ind.direction})


def _anchor_link(h: Hypothesis, t: Table, skip_spans):
    """An exact link from a numeric hypothesis mention into a numeric grid column,
    whose row label is named in the hypothesis."""
    ms = h.mentions
    lowered = h.text.lower()
    for link in link_mentions(h, t):
        m = ms[link.hyp_index]
        if link.approximate or link.conversion is not None or m.span in skip_spans or not m.is_quantity:
            continue
        r, c = link.cell
        if cell_number(t.cell(r, c)) is None:
            continue
        label = t.row_label(r)
        if label and re.search(r"\b" + re.escape(label.lower()) + r"\b", lowered):
            return link
    return None


def _rerank_edit(h: Hypothesis, ind, k: int) -> EditRecord:
    text = h.text
    if ind.ordinal is not None:
        s, e = ind.ordinal
        old = text[s:e]
        style = "suffix" if old[:1].isdigit() else "word"
        if k == 1 and ind.superlative is not None:
            # "second highest" -> "highest"
            s2 = ind.superlative[0]
            return EditRecord((s, s2), text[s:s2], "", "sorting.rerank")
        return EditRecord((s, e), old, match_case(old, format_ordinal(k, style)), "sorting.rerank")
    s, e = ind.superlative
    word = text[s:e]
    lead = format_ordinal(k, "word")
    return EditRecord((s, e), word, f"{match_case(word, lead)} {word.lower() if word[:1].isupper() else word}",
                      "sorting.rerank")


def _sorting_flip(em: Emitter, h: Hypothesis, t: Table, indicators):
    if not t.is_grid:
        raise NoApplicableMention(f"{h.id}: sorting flips need a relational table")
    skip = {ind.ordinal for ind in indicators if ind.ordinal}
    link = _anchor_link(h, t, skip)
    if link is None:
        raise NoApplicableMention(f"{h.id}: no anchored link into a numeric column")
    r, c = link.cell
    m = h.mentions[link.hyp_index]
    try:
        column = extract_numeric_column(t, c)
    except NoNumericCells as exc:
        raise NoApplicableMention(str(exc)) from None
    anchor_value = cell_number(t.cell(r, c)).value
    for occ, ind in enumerate(indicators):
        if em.full("flip"):
            break
        if ind.rank > len(column.values):
            em.skip(f"rank {ind.rank} beyond a column of {len(column.values)} values")
            continue
        ranks = [k for k in range(1, len(column.values) + 1)
                 if k != ind.rank and rank_value(column.values, k, ind.direction) != anchor_value]
        if not ranks:
            em.skip("no other rank holds a different value")
            continue
        seed = em.seed("flip", occ)
        k = rng_for(seed).choice(ranks)
        value = rank_value(column.values, k, ind.direction)
        edits = [_rerank_edit(h, ind, k), text_edit(m, m.render(value), "sorting.rank_value")]
        em.emit("flip", True, seed, edits,
                {"column": c, "rank": k, "direction": ind.direction, "anchor_row": r})


def gen_sorting(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig, tokens=None):
    tokens = tokens or load_reference_tokens()
    indicators = find_position_indicators(h.text, h.mentions, tokens)
    if not indicators:
        raise NoApplicableMention(f"{h.id}: no position indicator")
    em = Emitter(h, ReasoningType.SORTING, config)
    if mode is Mode.PRESERVE:
        _sorting_preserve(em, h, indicators, tokens["sorting"]["synonyms"])
    else:
        require_entail(h, "sorting")
        if t is None:
            raise NoApplicableMention(f"{h.id}: sorting flips need the premise table")
        _sorting_flip(em, h, t, indicators)
    return em.result()


# arithmetic -------------------------------------------------------------------

def result_mention(h: Hypothesis):
    for m in h.mentions:
        if m.is_quantity and m.value == h.arith.result:
            return m
    return None


def gen_arithmetic(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig):
    if h.arith is None:
        raise NoApplicableMention(f"{h.id}: no arithmetic derivation")
    m = result_mention(h)
    if m is None:
        raise NoApplicableMention(f"{h.id}: the derivation result is not mentioned in the text")
    em = Emitter(h, ReasoningType.ARITHMETIC, config)
    correct = h.arith.compute()
    meta = {"correct": correct.plain(), "operation": h.arith.operation.value}
    if mode is Mode.PRESERVE:
        em.emit("preserve", False, em.seed("preserve", 0), [text_edit(m, m.render(correct), "arithmetic.result")],
                meta)
        return em.result()
    require_entail(h, "arithmetic")
    seed = em.seed("flip", 0)
    rng = rng_for(seed)
    dec = display_decimals(m)
    shown = m.format.displayed(correct)
    for _ in range(16):
        factor = sample_factor(rng, config.arith_error_low, config.arith_error_high)
        wrong = NumericValue.of(shown.to_fraction() * factor).quantize(dec)
        if wrong != shown.quantize(dec):
            value = from_displayed(m.format, wrong)
            em.emit("flip", True, seed, [text_edit(m, m.render(value), "arithmetic.perturb")],
                    {**meta, "factor": str(factor)})
            break
    else:
        em.skip("no distinct perturbed result")
    return em.result()


# word problems ----------------------------------------------------------------

def answer_mention(h: Hypothesis):
    if not h.answer:
        return None, None
    pos = h.text.find(h.answer)
    if pos < 0:
        return None, None
    for i, m in enumerate(h.mentions):
        if m.start <= pos < m.end and isinstance(m.value, NumericValue) and m.kind is not K.ORDINAL:
            return i, m
    return None, None


def column_values(t: Table, coord):
    """Values sharing the answer's column (grid) or the value column (infobox)."""
    r, c = coord
    if t.is_grid:
        return list(extract_numeric_column(t, c).values)
    out = []
    for i in range(t.n_rows):
        m = cell_number(t.cell(i, 1))
        if m is not None:
            out.append(m.value)
    return out


def gen_wordproblem(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig):
    idx, m = answer_mention(h)
    if m is None:
        raise NoApplicableMention(f"{h.id}: no numeric answer in the hypothesis")
    em = Emitter(h, ReasoningType.WORD_PROBLEM, config)
    if mode is Mode.PRESERVE:
        em.emit("preserve", False, em.seed("preserve", 0), [], {"answer": h.answer})
        return em.result()
    require_entail(h, "word-problem")
    if t is None:
        raise NoApplicableMention(f"{h.id}: word-problem flips need the premise table")
    link = next((l for l in link_mentions(h, t) if l.hyp_index == idx and not l.approximate
                 and l.conversion is None), None)
    if link is None:
        raise NoApplicableMention(f"{h.id}: the answer does not link to a table cell")
    try:
        values = column_values(t, link.cell)
    except NoNumericCells as exc:
        raise NoApplicableMention(str(exc)) from None
    others = sorted({v for v in values if v != m.value}, key=lambda v: v.to_fraction())
    if not others:
        raise NoApplicableMention(f"{h.id}: the answer column has no other value")
    seed = em.seed("flip", 0)
    value = rng_for(seed).choice(others)
    em.emit("flip", True, seed, [text_edit(m, m.render(value), "wordproblem.column_value")],
            {"column": link.cell[1], "cell": list(link.cell)})
    return em.result()


# counterfactual tables --------------------------------------------------------

_ORDER_WORDS = re.compile(r"\b(?:last|previous|next|row|rows|listed|above|below)\b", re.IGNORECASE)


def counterfactual_table_id(table_id: str, probe_id: str) -> str:
    return f"{table_id}~{probe_id}"


def _holds_value(cell, hm) -> bool:
    for cm in cell.mentions:
        cv = comparable_value(hm, cm)
        if cv is not None and cv[0] == hm.value:
            return True
    return False


def _cf_flip(em: Emitter, h: Hypothesis, t: Table):
    ms = h.mentions
    fixed = comparison_thresholds(h)
    links = [l for l in link_mentions(h, t) if not l.approximate and l.hyp_index not in fixed]
    if not links:
        raise NoApplicableMention(f"{h.id}: no exact link into the table")
    for occ, link in enumerate(links):
        if em.full("swap-flip"):
            break
        r, c = link.cell
        hm = ms[link.hyp_index]
        cm = t.cell(r, c).mentions[link.cell_index]
        coords = [(i, c) for i in range(t.n_rows)] if t.is_grid else [(i, 1) for i in range(t.n_rows)]
        partners = []
        for pr, pc in coords:
            if (pr, pc) == (r, c):
                continue
            cell = t.cell(pr, pc)
            same_kind = [x for x in cell.mentions if x.kind is cm.kind and x.value != cm.value]
            if same_kind and not _holds_value(cell, hm):
                partners.append((pr, pc))
        if not partners:
            em.skip(f"no swap partner for cell {link.cell}")
            continue
        seed = em.seed("swap-flip", occ)
        pr, pc = rng_for(seed).choice(partners)
        a, b = t.cell(r, c).raw, t.cell(pr, pc).raw
        edits = [EditRecord((r, c), a, b, "counterfactual.cell_swap", "cell"),
                 EditRecord((pr, pc), b, a, "counterfactual.cell_swap", "cell")]
        pid = em.next_probe_id("swap-flip")
        em.emit("swap-flip", True, seed, edits,
                {"cell": [r, c], "partner": [pr, pc], "hyp_mention": link.hyp_index},
                table_ref=counterfactual_table_id(t.id, pid))


def _cf_preserve(em: Emitter, h: Hypothesis, t: Table, tokens):
    if not t.is_grid or t.n_rows < 2:
        raise NoApplicableMention(f"{h.id}: row swaps need a relational table with two rows")
    if find_position_indicators(h.text, h.mentions, tokens) or _ORDER_WORDS.search(h.text):
        raise NoApplicableMention(f"{h.id}: the hypothesis depends on row order")
    if not link_mentions(h, t):
        raise NoApplicableMention(f"{h.id}: no link into the table")
    seed = em.seed("rowswap-preserve", 0)
    r1, r2 = sorted(rng_for(seed).sample(range(t.n_rows), 2))
    edits = []
    for j in range(t.n_cols):
        a, b = t.cell(r1, j).raw, t.cell(r2, j).raw
        if a != b:
            edits += [EditRecord((r1, j), a, b, "counterfactual.row_swap", "cell"),
                      EditRecord((r2, j), b, a, "counterfactual.row_swap", "cell")]
    if not edits:
        raise NoApplicableMention(f"{h.id}: the swapped rows are identical")
    pid = em.next_probe_id("rowswap-preserve")
    em.emit("rowswap-preserve", False, seed, edits, {"rows": [r1, r2]},
            table_ref=counterfactual_table_id(t.id, pid))


def gen_counterfactual(h: Hypothesis, t: Table | None, mode: Mode, config: GenerationConfig, tokens=None):
    if not h.mentions:
        raise NoApplicableMention(f"{h.id}: no number mention")
    if t is None:
        raise NoApplicableMention(f"{h.id}: counterfactuals need the premise table")
    em = Emitter(h, ReasoningType.COUNTERFACTUAL, config)
    if mode is Mode.PRESERVE:
        _cf_preserve(em, h, t, tokens or load_reference_tokens())
    else:
        require_entail(h, "counterfactual")
        _cf_flip(em, h, t)
    return em.result()


def counterfactual_table(probe: Probe, base: Table) -> Table:
    """The edited premise a counterfactual probe refers to."""
    return apply_cell_edits(base, probe.edits, probe.table_ref)


def gen_counterfactual_table(h: Hypothesis, t: Table, mode: Mode, config: GenerationConfig):
    """Counterfactual probes paired with their edited tables."""
    return [(counterfactual_table(p, t), p) for p in gen_counterfactual(h, t, mode, config)]


def filter_counterfactual_triples(triples) -> list:
    """Admit external {hypothesis, original, counterfactual} triples with a numeric hypothesis."""
    from ..numparse import scan_mentions
    out = []
    for triple in triples:
        text = triple["hypothesis"] if isinstance(triple, dict) else triple[0]
        if isinstance(text, Hypothesis):
            text = text.text
        if scan_mentions(text):
            out.append(triple)
    return out
