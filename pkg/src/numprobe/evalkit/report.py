"""CSV and aligned-text renderings of an accuracy-shift report."""

from __future__ import annotations

import csv
import io

from ..taxonomy import Level, ReasoningType
from .scoring import EvalRow

LEVEL_NAMES = {Level.R1: "Representation", Level.R2: "Number Sense",
               Level.R3: "Manipulation", Level.R4: "Complex Reasoning"}
CSV_FIELDS = ("level", "reasoning_type", "flip", "n_base", "n_probe", "acc_base", "acc_probe", "shift_pct")


def _fmt_shift(row: EvalRow) -> str:
    return "N/A" if row.shift_pct is None else f"{row.shift_pct:+.2f}"


def report_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([r.reasoning_type.level.value, r.reasoning_type.value, int(r.flip), r.n_base, r.n_probe,
                    f"{r.acc_base:.2f}", f"{r.acc_probe:.2f}", _fmt_shift(r)])
    return buf.getvalue()


def report_text(rows) -> str:
    """Rows grouped by level; label-flipping rows follow their level under their own heading."""
    rows = list(rows)
    header = ("Reasoning", "n_base", "n_probe", "acc_base", "acc_probe", "shift %")
    body: list[tuple] = []
    for level in Level:
        for flip in (False, True):
            group = [r for r in rows if r.reasoning_type.level is level and r.flip is flip]
            if not group:
                continue
            body.append((f"-- {LEVEL_NAMES[level]}{' (label flipped)' if flip else ''}",))
            order = list(ReasoningType)
            for r in sorted(group, key=lambda r: order.index(r.reasoning_type)):
                body.append((r.reasoning_type.value, str(r.n_base), str(r.n_probe),
                             f"{r.acc_base:.2f}", f"{r.acc_probe:.2f}", _fmt_shift(r)))
    widths = [max(len(x[i]) for x in [header] + [b for b in body if len(b) > 1]) for i in range(len(header))]

    def line(cells):
        first = cells[0].ljust(widths[0])
        return "  ".join([first] + [c.rjust(w) for c, w in zip(cells[1:], widths[1:])])

    out = [line(header), "  ".join("-" * w for w in widths)]
    out += [b[0] if len(b) == 1 else line(b) for b in body]
    return "\n".join(out) + "\n"
