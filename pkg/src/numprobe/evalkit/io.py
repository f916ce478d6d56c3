from __future__ import annotations

import json
from pathlib import Path

from ..corpus import ParseError
from .errors import DuplicatePrediction
from .scoring import PredictionRecord


def load_predictions(path) -> list[PredictionRecord]:
    """JSON Lines ``{item_id, label}``; a leading header record (``{"header": ...}``) is skipped."""
    path = Path(path)
    out, seen = [], set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(rec, dict):
                raise ParseError(path, lineno, "record is not a JSON object")
            if "header" in rec:
                continue
            if "item_id" not in rec or "label" not in rec:
                raise ParseError(path, lineno, "prediction needs item_id and label")
            item_id = str(rec["item_id"])
            if item_id in seen:
                raise DuplicatePrediction(f"{path}:{lineno}: item {item_id!r} predicted more than once")
            seen.add(item_id)
            out.append(PredictionRecord(item_id, "" if rec["label"] is None else str(rec["label"])))
    return out


def dump_predictions(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            item_id, raw = (r.item_id, r.predicted_label_raw) if isinstance(r, PredictionRecord) else r
            fh.write(json.dumps({"item_id": item_id, "label": raw}) + "\n")
