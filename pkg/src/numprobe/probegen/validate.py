"""Independent re-checks of generated probes.

Each probe is checked against its base hypothesis (and table) without reusing
the generator's choices: values are re-parsed from the edit surfaces,
comparisons are re-grounded, ranks are recounted and arithmetic is recomputed
from the table cells.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from ..corpus import Hypothesis, Label, Table, find_signal_words, ground_mention
from ..corpus.linking import cell_number, comparable_value
from ..numparse import (DimensionMismatch, MentionKind, NumericValue, UnknownUnit, convert_unit,
                        default_catalog, granularity_exp, parse_mention)
from ..taxonomy import ReasoningType
from .generate import MODES
from .model import Mode, Probe, apply_cell_edits, apply_edits, revert_cell_edits, revert_edits
from .sense import parse_range

K = MentionKind
RT = ReasoningType
_HEDGE = re.compile(r"(?:about|approximately|around|roughly|nearly|almost)\s+", re.IGNORECASE)


@dataclass(frozen=True)
class Violation:
    probe_id: str
    check: str
    detail: str

    def to_dict(self) -> dict:
        return {"probe_id": self.probe_id, "check": self.check, "detail": self.detail}

    def __str__(self) -> str:
        return f"{self.probe_id}: {self.check}: {self.detail}"


class _Fail(Exception):
    def __init__(self, check: str, detail: str):
        super().__init__(detail)
        self.check, self.detail = check, detail


def _need(cond: bool, check: str, detail: str) -> None:
    if not cond:
        raise _Fail(check, detail)


def _parse(surface: str, check: str):
    m = parse_mention(surface)
    _need(m is not None, check, f"{surface!r} does not parse as one number")
    return m


def _frac(v) -> Fraction:
    return v.to_fraction() if isinstance(v, NumericValue) else Fraction(v)


def _is_words(m) -> bool:
    return m.format.pattern.startswith("words")


def _new_spans(p: Probe) -> list[tuple[int, int]]:
    """Where each text edit landed in the probe text."""
    out, delta = [], 0
    for e in sorted((e for e in p.edits if e.target == "text"), key=lambda e: e.span):
        s = e.span[0] + delta
        out.append((s, s + len(e.new)))
        delta += len(e.new) - (e.span[1] - e.span[0])
    return out


# per-rule checks ---------------------------------------------------------------

def _same_value(e, check):
    a, b = _parse(e.old, check), _parse(e.new, check)
    _need(a.value == b.value, check, f"{e.old!r} -> {e.new!r} changes the value")
    return a, b


def _changed_value(e, check):
    a, b = _parse(e.old, check), _parse(e.new, check)
    _need(a.value != b.value, check, f"{e.old!r} -> {e.new!r} keeps the value")
    return a, b


def _check_numeration(e, config):
    if e.rule in ("numeration.to_digits", "numeration.to_words"):
        a, b = _same_value(e, "value-equality")
        want_words = e.rule == "numeration.to_words"
        _need(_is_words(b) == want_words and _is_words(a) != want_words, "numeration",
              f"{e.old!r} -> {e.new!r} does not switch between digits and words")
    else:
        a, b = _changed_value(e, "flip-difference")
        x, y = _frac(a.value), _frac(b.value)
        hw = Fraction(str(config.flip_halfwidth))
        if x == 0:
            _need(1 <= y <= 9, "numeration-bounds", f"{e.new!r} outside 1-9")
        else:
            _need(abs(y - x) <= hw * abs(x), "numeration-bounds",
                  f"{e.new!r} more than {config.flip_halfwidth} x |{e.old}| away")


def _check_hetero(e, config):
    if e.rule == "hetero.reformat":
        a, b = _same_value(e, "value-equality")
        _need(a.format != b.format or a.unit != b.unit or e.old != e.new, "heterogeneous",
              f"{e.old!r} -> {e.new!r} keeps the format")
    else:
        _changed_value(e, "flip-difference")


def _check_negative(e, config):
    a, b = _parse(e.old, "negative"), _parse(e.new, "negative")
    if e.rule == "negative.drop_sign":
        _need(b.value == -a.value, "flip-difference", f"{e.new!r} is not the absolute value of {e.old!r}")
    else:
        _need(a.value == b.value and a.value < NumericValue.of(0), "value-equality",
              f"{e.old!r} -> {e.new!r} changes the value")


def _converted(a, b) -> Fraction:
    """``b``'s value expressed in ``a``'s unit."""
    try:
        return convert_unit(b.value, b.unit, a.unit).to_fraction()
    except (DimensionMismatch, UnknownUnit) as exc:
        raise _Fail("scale", str(exc)) from None


def _check_scale(e, config):
    cat = default_catalog()
    a, b = _parse(e.old, "scale"), _parse(e.new, "scale")
    _need(a.kind is K.MEASURED and b.kind is K.MEASURED, "scale", f"{e.old!r} -> {e.new!r} lost the unit")
    if e.rule == "scale.alias":
        _need(a.unit == b.unit and a.value == b.value and e.old != e.new, "value-equality",
              f"{e.old!r} -> {e.new!r} is not a renaming")
    elif e.rule == "scale.convert":
        _need(a.unit != b.unit, "scale", f"{e.old!r} -> {e.new!r} keeps the unit")
        _need(_converted(a, b) == a.value.to_fraction(), "value-equality",
              f"{e.new!r} is not {e.old!r}")
    elif e.rule == "scale.convert_corrupt":
        _need(a.unit != b.unit, "scale", f"{e.old!r} -> {e.new!r} keeps the unit")
        x, y = a.value.to_fraction(), _converted(a, b)
        _need(abs(y - x) >= abs(x) / 20, "flip-difference", f"{e.new!r} is within 5% of {e.old!r}")
    else:
        _need(cat.unit(a.unit).family != cat.unit(b.unit).family, "flip-difference",
              f"{e.old!r} -> {e.new!r} stays in the same measure family")


def _check_approx(e, config, p):
    hedge = _HEDGE.match(e.new)
    _need(hedge is not None, "approximation", f"{e.new!r} has no hedge word")
    a, b = _parse(e.old, "approximation"), _parse(e.new[hedge.end():], "approximation")
    g = granularity_exp(a.value, config.rounding_tiers)
    unit = Fraction(10) ** g
    gap = abs(_frac(b.value) - _frac(a.value))
    if e.rule == "approximation.round":
        _need(gap * 2 <= unit and _frac(b.value) % unit == 0, "value-equality",
              f"{e.new!r} is not {e.old!r} rounded to 1e{g}")
    else:
        _need(gap >= unit, "flip-difference", f"{e.new!r} is within one step (1e{g}) of {e.old!r}")


def _check_range(e, config):
    a = _parse(e.old, "range")
    bounds = parse_range(e.new, a)
    _need(bounds is not None, "range", f"{e.new!r} is not a range in the style of {e.old!r}")
    lo, hi = (_frac(x) for x in bounds)
    x = _frac(a.value)
    _need(0 < lo < x < hi, "range-containment", f"{e.old!r} not strictly inside {e.new!r}")


def _base_span(p: Probe, span: tuple[int, int]) -> tuple[int, int] | None:
    """Map a span of the probe text back onto the base text."""
    delta = 0
    for e, (ns, ne) in zip(sorted((e for e in p.edits if e.target == "text"), key=lambda e: e.span),
                           _new_spans(p)):
        if (ns, ne) == span:
            return e.span
        if ns < span[1] and span[0] < ne:
            return None
        if ne <= span[0]:
            delta += len(e.new) - (e.span[1] - e.span[0])
    return span[0] - delta, span[1] - delta


def _check_comparison(p: Probe, h: Hypothesis, t: Table | None):
    _need(t is not None, "comparison", "no premise table")
    probe_h = Hypothesis(p.probe_id, p.text, h.table_id, p.expected_label)
    touched = _new_spans(p)
    base_index = {m.span: i for i, m in enumerate(h.mentions)}
    signals = find_signal_words(probe_h.text, probe_h.mentions)
    edited = sum(1 for sw in signals for s, e in (sw.span, probe_h.mentions[sw.threshold_index].span)
                 for ts, te in touched if s < te and ts < e)
    verdicts = []
    for sw in signals:
        m = probe_h.mentions[sw.threshold_index]
        # the fact is what the base statement's threshold refers to
        bi = base_index.get(_base_span(p, m.span))
        grounded = ground_mention(h, t, bi) if bi is not None else None
        if grounded is None:
            continue
        fact = grounded[0]
        holds = fact > m.value if sw.direction == "gt" else fact < m.value
        verdicts.append(f"{fact} {sw.word} {m.surface!r} is {holds}")
        if not holds:
            break
    _need(edited > 0, "comparison", "no edited comparison found in the probe")
    holds = bool(verdicts) and verdicts[-1].endswith("True")
    _need(verdicts and holds == (p.expected_label is Label.ENTAIL), "comparison",
          f"{'; '.join(verdicts) or 'nothing grounds'}, label {p.expected_label.value}")


def _brute_rank_ok(values, v: NumericValue, k: int, direction: str) -> bool:
    """Whether ``v`` may sit at 1-based rank ``k`` (ties share the ranks they span)."""
    if direction == "row":
        return 1 <= k <= len(values) and values[k - 1] == v
    x = v.to_fraction()
    better = sum(1 for w in values if (w.to_fraction() > x if direction == "desc" else w.to_fraction() < x))
    equal = sum(1 for w in values if w.to_fraction() == x)
    return equal > 0 and better < k <= better + equal


def _check_sorting(p: Probe, h: Hypothesis, t: Table | None):
    if not p.flip:
        for e in p.edits:
            if e.rule == "sorting.ordinal_style":
                _same_value(e, "value-equality")
        return
    _need(t is not None, "sorting", "no premise table")
    col, k, direction, row = (p.meta.get(x) for x in ("column", "rank", "direction", "anchor_row"))
    _need(None not in (col, k, direction, row), "sorting", "rank metadata missing")
    values = []
    for r in range(t.n_rows):
        m = cell_number(t.cell(r, col))
        if m is not None:
            values.append(m.value)
    value_edits = [e for e in p.edits if e.rule == "sorting.rank_value"]
    _need(len(value_edits) == 1, "sorting", "expected one value edit")
    v = _parse(value_edits[0].new, "sorting").value
    _need(_brute_rank_ok(values, v, k, direction), "sorting-rank",
          f"{v} is not at rank {k} ({direction}) of column {col}")
    anchor = cell_number(t.cell(row, col))
    _need(anchor is not None and anchor.value != v, "flip-difference",
          f"row {row} already holds {v}")


def _check_arithmetic(p: Probe, h: Hypothesis, t: Table | None):
    _need(h.arith is not None, "arithmetic", "base has no derivation")
    ops = []
    for value, (r, c) in h.arith.operands:
        if t is not None:
            cell = t.cell(r, c)
            _need(any(m.value == value for m in cell.mentions), "arithmetic",
                  f"operand {value} not found in cell ({r}, {c})")
        ops.append(value.to_fraction())
    op = h.arith.operation.value
    acc = ops[0]
    for x in ops[1:]:
        acc = {"Add": acc + x, "Subtract": acc - x, "Multiply": acc * x,
               "Divide": acc / x if x else None}[op]
        _need(acc is not None, "arithmetic", "division by zero")
    (e,) = [e for e in p.edits if e.target == "text"]
    shown = _parse(e.new, "arithmetic")
    step = Fraction(1, 10 ** max(shown.format.decimals, shown.displayed.decimals)) \
        * Fraction(10) ** shown.format.magnitude_exp
    close = abs(shown.value.to_fraction() - acc) * 2 <= step
    if p.flip:
        _need(not close, "flip-difference", f"{e.new!r} matches {op} = {float(acc)}")
    else:
        _need(close, "arithmetic", f"{e.new!r} is not {op} = {float(acc)}")


def _check_wordproblem(p: Probe, h: Hypothesis, t: Table | None):
    if not p.flip:
        _need(not p.edits and p.text == h.text, "wordproblem", "preserve probe must be the base text")
        return
    (e,) = p.edits
    a, b = _changed_value(e, "flip-difference")
    r, c = p.meta["cell"]
    coords = [(i, c) for i in range(t.n_rows)] if t.is_grid else [(i, 1) for i in range(t.n_rows)]
    _need(any(cell_number(t.cell(*x)) is not None and cell_number(t.cell(*x)).value == b.value
              for x in coords), "wordproblem", f"{e.new!r} is not a value of column {c}")


def _row_multiset(table: Table) -> Counter:
    return Counter(tuple(cell.raw for cell in row) for row in table.rows)


def _check_counterfactual(p: Probe, h: Hypothesis, t: Table | None, cf: Table | None):
    _need(t is not None and cf is not None, "counterfactual", "missing base or counterfactual table")
    cells = [e for e in p.edits if e.target == "cell"]
    _need(cells and len(cells) == len(p.edits), "counterfactual", "expected only cell edits")
    _need(p.text == h.text, "counterfactual", "hypothesis text must be unchanged")
    _need(Counter((e.old, e.new) for e in cells) == Counter((e.new, e.old) for e in cells),
          "counterfactual", "cell edits are not swaps")
    if p.flip:
        r, c = p.meta["cell"]
        hm = h.mentions[p.meta["hyp_mention"]]
        for cm in cf.cell(r, c).mentions:
            cv = comparable_value(hm, cm)
            _need(cv is None or cv[0] != hm.value, "flip-difference",
                  f"cell ({r}, {c}) still holds {hm.surface!r}")
        col = [cf.cell(i, c).raw for i in range(cf.n_rows)]
        base_col = [t.cell(i, c).raw for i in range(t.n_rows)]
        _need(Counter(col) == Counter(base_col), "counterfactual", "column contents changed")
    else:
        _need(_row_multiset(cf) == _row_multiset(t), "value-equality", "row swap changed the row contents")
        _need(cf.rows != t.rows, "counterfactual", "row swap left the table unchanged")


_TEXT_RULES = {
    RT.NUMERATION: _check_numeration,
    RT.HETEROGENEOUS: _check_hetero,
    RT.NEGATIVE: _check_negative,
    RT.SCALE: _check_scale,
    RT.RANGE: _check_range,
}


# driver ------------------------------------------------------------------------

def _check_common(p: Probe, h: Hypothesis, t: Table | None, cf: Table | None):
    want = h.label.opposite if p.flip else h.label
    _need(p.expected_label is want, "label-algebra",
          f"expected {want.value} from base {h.label.value} with flip={p.flip}")
    mode = Mode.FLIP if p.flip else Mode.PRESERVE
    _need(mode in MODES[p.type], "label-algebra", f"{p.type.value} defines no {mode.value} probes")
    try:
        _need(apply_edits(h.text, p.edits) == p.text, "reversibility", "edits do not produce the probe text")
        _need(revert_edits(p.text, p.edits) == h.text, "reversibility", "reverting does not give the base text")
    except ValueError as exc:
        raise _Fail("reversibility", str(exc)) from None
    has_cells = any(e.target == "cell" for e in p.edits)
    _need(has_cells == (p.table_ref is not None), "reversibility", "table_ref and cell edits disagree")
    if has_cells:
        _need(t is not None and cf is not None, "reversibility", f"table {p.table_ref!r} unavailable")
        try:
            _need(apply_cell_edits(t, p.edits, cf.id).rows == cf.rows, "reversibility",
                  "cell edits do not produce the counterfactual table")
            _need(revert_cell_edits(cf, p.edits, t.id).rows == t.rows, "reversibility",
                  "reverting the cell edits does not give the base table")
        except ValueError as exc:
            raise _Fail("reversibility", str(exc)) from None
    if p.flip:
        _need(p.text != h.text or has_cells, "flip-difference", "flip probe changes nothing")


def validate_probe(p: Probe, h: Hypothesis, t: Table | None, cf: Table | None = None, config=None) -> list[Violation]:
    from .model import GenerationConfig
    config = config or GenerationConfig()
    out = []

    def run(fn, *args):
        try:
            fn(*args)
        except _Fail as f:
            out.append(Violation(p.probe_id, f.check, f.detail))
        except (ValueError, KeyError, TypeError, IndexError, AttributeError) as exc:
            out.append(Violation(p.probe_id, "malformed", f"{type(exc).__name__}: {exc}"))

    if p.table_ref is not None and cf is None:
        return [Violation(p.probe_id, "dangling-ref", f"counterfactual table {p.table_ref!r} not found")]
    run(_check_common, p, h, t, cf)
    if p.type in _TEXT_RULES:
        for e in p.edits:
            run(_TEXT_RULES[p.type], e, config)
    elif p.type is RT.APPROXIMATION:
        for e in p.edits:
            run(_check_approx, e, config, p)
    elif p.type is RT.COMPARISON:
        run(_check_comparison, p, h, t)
    elif p.type is RT.SORTING:
        run(_check_sorting, p, h, t)
    elif p.type is RT.ARITHMETIC:
        run(_check_arithmetic, p, h, t)
    elif p.type is RT.WORD_PROBLEM:
        run(_check_wordproblem, p, h, t)
    elif p.type is RT.COUNTERFACTUAL:
        run(_check_counterfactual, p, h, t, cf)
    return out


def validate(probes, corpus, tables=None, config=None) -> list[Violation]:
    """All violations in ``probes`` against ``corpus`` (and counterfactual ``tables``)."""
    hyps = {h.id: h for h in corpus.hypotheses}
    tables = tables or {}
    out = []
    seen = set()
    for p in probes:
        if p.probe_id in seen:
            out.append(Violation(p.probe_id, "identity", "duplicate probe id"))
        seen.add(p.probe_id)
        h = hyps.get(p.base_id)
        if h is None:
            out.append(Violation(p.probe_id, "dangling-ref", f"unknown base hypothesis {p.base_id!r}"))
            continue
        t = corpus.tables.get(h.table_id)
        cf = tables.get(p.table_ref) if p.table_ref else None
        out.extend(validate_probe(p, h, t, cf, config))
    return out
