"""Probe files: JSON Lines with a header record, a sibling table file, and count statistics."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from pathlib import Path

from .. import __version__
from ..corpus import ParseError, Table, load_tables
from ..taxonomy import ReasoningType
from .model import GenerationConfig, Probe

RT = ReasoningType


def tables_path_for(probes_path) -> Path:
    """``out/probes.jsonl`` -> ``out/probes.tables.jsonl``."""
    p = Path(probes_path)
    return p.with_name(p.name.split(".")[0] + ".tables.jsonl")


def header_record(config: GenerationConfig, extra: dict | None = None) -> dict:
    head = {"artifact": "numprobe", "version": __version__, "seed": config.master_seed,
            "config": config.to_dict()}
    head.update(extra or {})
    return {"header": head}


def _line(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False, separators=(",", ":")) + "\n"


def write_probes(probes, path, config: GenerationConfig, tables: dict[str, Table] | None = None,
                 extra_header: dict | None = None) -> Path | None:
    """Write probes (and counterfactual tables, if any) deterministically.

    Returns the table file path, or ``None`` when no table was written.
    """
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_line(header_record(config, extra_header)))
        for p in probes:
            fh.write(_line(p.to_dict()))
    tpath = tables_path_for(path)
    if tables:
        with open(tpath, "w", encoding="utf-8", newline="\n") as fh:
            for tid in sorted(tables):
                fh.write(_line(tables[tid].to_dict()))
        return tpath
    if tpath.exists():
        tpath.unlink()
    return None


def read_probes(path) -> tuple[dict, list[Probe]]:
    """``(header, probes)``; the header is ``{}`` when the file has none."""
    path = Path(path)
    header, probes = {}, []
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
                header = rec["header"]
                continue
            try:
                probes.append(Probe.from_dict(rec))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(path, lineno, f"bad probe record: {exc}") from None
    return header, probes


def read_probe_tables(path) -> dict[str, Table]:
    """Counterfactual tables stored next to a probe file (empty when there are none)."""
    tpath = tables_path_for(path)
    return load_tables(tpath) if tpath.exists() else {}


def probe_stats(probes) -> list[tuple[str, int]]:
    """Per-type counts; heterogeneous probes are broken down by the format of their first edited mention.

    Rows are in ascending count order, followed by the total and the number of flipped probes.
    """
    counts: Counter = Counter()
    flipped = 0
    for p in probes:
        if p.type is RT.HETEROGENEOUS and p.meta.get("subtypes"):
            counts[p.meta["subtypes"][0]] += 1
        else:
            counts[p.type.value] += 1
        flipped += p.flip
    rows = sorted(counts.items(), key=lambda kv: (kv[1], kv[0]))
    total = sum(counts.values())
    return rows + [("Total", total), ("Flipped probes", flipped)]


def stats_csv(probes) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("type", "count"))
    w.writerows(probe_stats(probes))
    return buf.getvalue()
