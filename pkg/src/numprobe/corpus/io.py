"""Reading and writing TNLI, QA and table files."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

from .errors import DanglingTableRef, DuplicateId, InvalidArithMetadata, ParseError, TableShapeError, \
    UnsupportedQuestionForm
from .model import ArithMetadata, Hypothesis, Label, Table, parse_label
from .recast import recast_with_trace

log = logging.getLogger(__name__)

FORMATS = ("tnli", "qa")


@dataclass
class Corpus:
    tables: dict[str, Table]
    hypotheses: list[Hypothesis]
    skipped: list[dict] = field(default_factory=list)

    def table_for(self, h: Hypothesis) -> Table:
        return self.tables[h.table_id]


def _json_lines(path: Path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line, parse_float=Decimal)
            except json.JSONDecodeError as exc:
                raise ParseError(path, lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(rec, dict):
                raise ParseError(path, lineno, "record is not a JSON object")
            if set(rec) == {"header"}:  # provenance record written by the command-line tool
                continue
            yield lineno, rec


def load_tables(path) -> dict[str, Table]:
    """Tables from a JSON file (one object or a list) or a JSON Lines file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    records: list[tuple[int | None, dict]]
    stripped = text.lstrip()
    if stripped.startswith("[") or (stripped.startswith("{") and path.suffix == ".json"):
        try:
            data = json.loads(text, parse_float=Decimal)
        except json.JSONDecodeError as exc:
            raise ParseError(path, exc.lineno, f"invalid JSON ({exc.msg})") from None
        records = [(None, d) for d in (data if isinstance(data, list) else [data])]
    else:
        records = list(_json_lines(path))
    tables: dict[str, Table] = {}
    for lineno, rec in records:
        try:
            t = Table.from_dict(rec)
        except (KeyError, TypeError, TableShapeError) as exc:
            raise ParseError(path, lineno, f"bad table record: {exc}") from None
        if t.id in tables:
            raise DuplicateId(f"{path}: duplicate table id {t.id!r}")
        tables[t.id] = t
    return tables


def _sibling_tables(path: Path) -> Path:
    for suffix in (".tables.jsonl", ".tables.json"):
        cand = path.with_name(path.name.split(".")[0] + suffix)
        if cand.exists():
            return cand
    raise FileNotFoundError(f"no table file given and none found next to {path}")


def _require(rec: dict, keys, path, lineno):
    missing = [k for k in keys if k not in rec]
    if missing:
        raise ParseError(path, lineno, f"missing field(s) {', '.join(missing)}")


def load_dataset(path, format_tag: str = "tnli", tables_path=None) -> Corpus:
    """Load hypotheses plus their tables.

    ``format_tag`` is ``"tnli"`` (labelled hypotheses) or ``"qa"`` (question/answer
    pairs, recast on the fly; unsupported questions are skipped and reported in
    ``Corpus.skipped``).
    """
    if format_tag not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format_tag!r}")
    path = Path(path)
    tables = load_tables(Path(tables_path) if tables_path else _sibling_tables(path))
    hyps: list[Hypothesis] = []
    skipped: list[dict] = []
    seen: set[str] = set()
    for lineno, rec in _json_lines(path):
        if format_tag == "tnli":
            _require(rec, ("id", "table_id", "hypothesis", "label"), path, lineno)
            try:
                label = parse_label(rec["label"])
            except ValueError as exc:
                raise ParseError(path, lineno, str(exc)) from None
            text, source = str(rec["hypothesis"]), str(rec.get("source", "tnli"))
            answer = rec.get("answer")
        else:
            _require(rec, ("id", "table_id", "question", "answer"), path, lineno)
            answer = str(rec["answer"])
            try:
                text = recast_with_trace(str(rec["question"]), answer).sentence
            except UnsupportedQuestionForm as exc:
                log.info("skipping %s: %s", rec["id"], exc)
                skipped.append({"id": str(rec["id"]), "line": lineno, "reason": str(exc)})
                continue
            label, source = Label.ENTAIL, str(rec.get("source", "qa"))
        hid = str(rec["id"])
        if hid in seen:
            raise DuplicateId(f"{path}:{lineno}: duplicate hypothesis id {hid!r}")
        seen.add(hid)
        if str(rec["table_id"]) not in tables:
            raise DanglingTableRef(f"{path}:{lineno}: hypothesis {hid!r} references missing table "
                                   f"{rec['table_id']!r}")
        arith = None
        if rec.get("derivation") is not None:
            try:
                arith = ArithMetadata.from_dict(rec["derivation"])
            except InvalidArithMetadata as exc:
                raise ParseError(path, lineno, f"derivation rejected: {exc}") from None
        hyps.append(Hypothesis(hid, text, str(rec["table_id"]), label, source, arith,
                               None if answer is None else str(answer)))
    return Corpus(tables, hyps, skipped)


def recast_file(path, tables: dict | None = None) -> tuple[list[Hypothesis], list[dict]]:
    """Recast a QA file to entailed hypotheses without loading a corpus.

    Returns ``(hypotheses, skipped)``; table references are checked only when
    ``tables`` is given.
    """
    path = Path(path)
    hyps, skipped, seen = [], [], set()
    for lineno, rec in _json_lines(path):
        _require(rec, ("id", "table_id", "question", "answer"), path, lineno)
        hid, answer = str(rec["id"]), str(rec["answer"])
        if hid in seen:
            raise DuplicateId(f"{path}:{lineno}: duplicate hypothesis id {hid!r}")
        seen.add(hid)
        if tables is not None and str(rec["table_id"]) not in tables:
            raise DanglingTableRef(f"{path}:{lineno}: hypothesis {hid!r} references missing table "
                                   f"{rec['table_id']!r}")
        try:
            text = recast_with_trace(str(rec["question"]), answer).sentence
        except UnsupportedQuestionForm as exc:
            skipped.append({"id": hid, "line": lineno, "reason": str(exc)})
            continue
        hyps.append(Hypothesis(hid, text, str(rec["table_id"]), Label.ENTAIL, str(rec.get("source", "qa")),
                               None, answer))
    return hyps, skipped


def dump_hypotheses(hyps, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for h in hyps:
            fh.write(json.dumps(h.to_dict(), ensure_ascii=False) + "\n")


def dump_tables(tables, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in (tables.values() if isinstance(tables, dict) else tables):
            fh.write(json.dumps(t.to_dict(), ensure_ascii=False) + "\n")
