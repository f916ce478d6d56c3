"""Probe records, edit provenance, configuration and seeding."""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass, field, fields
from decimal import Decimal

from ..corpus import Label, Table
from ..numparse.rounding import DEFAULT_TIERS
from ..taxonomy import Level, ReasoningType


class NoApplicableMention(Exception):
    """The hypothesis lacks the trigger (or grounding) a generator needs."""


class Mode(str, enum.Enum):
    PRESERVE = "preserve"
    FLIP = "flip"


@dataclass(frozen=True)
class EditRecord:
    """One replacement.  For ``target == "text"`` the span indexes the base
    hypothesis; for ``target == "cell"`` it is the ``(row, col)`` of a table cell."""

    span: tuple[int, int]
    old: str
    new: str
    rule: str
    target: str = "text"

    def to_dict(self) -> dict:
        out = {"span": list(self.span), "old": self.old, "new": self.new, "rule": self.rule}
        if self.target != "text":
            out["target"] = self.target
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "EditRecord":
        return cls(tuple(d["span"]), d["old"], d["new"], d["rule"], d.get("target", "text"))


def apply_edits(text: str, edits) -> str:
    """Apply disjoint text edits (spans in ``text``) left to right."""
    out, pos = [], 0
    for e in sorted((e for e in edits if e.target == "text"), key=lambda e: e.span):
        s, t = e.span
        if s < pos or text[s:t] != e.old:
            raise ValueError(f"edit {e} does not fit the text")
        out.append(text[pos:s])
        out.append(e.new)
        pos = t
    out.append(text[pos:])
    return "".join(out)


def revert_edits(text: str, edits) -> str:
    """Undo ``apply_edits``: walk the edits in reverse, locating each in the edited text."""
    ordered = sorted((e for e in edits if e.target == "text"), key=lambda e: e.span)
    # offset of each edit in the edited text
    shifts, delta = [], 0
    for e in ordered:
        shifts.append(e.span[0] + delta)
        delta += len(e.new) - (e.span[1] - e.span[0])
    for e, start in reversed(list(zip(ordered, shifts))):
        if text[start:start + len(e.new)] != e.new:
            raise ValueError(f"edit {e} not found at {start}")
        text = text[:start] + e.old + text[start + len(e.new):]
    return text


def apply_cell_edits(table: Table, edits, new_id: str) -> Table:
    changes = {}
    for e in edits:
        if e.target != "cell":
            continue
        r, c = e.span
        if table.cell(r, c).raw != e.old:
            raise ValueError(f"cell edit {e} does not fit table {table.id}")
        changes[(r, c)] = e.new
    return table.with_cells(changes, new_id)


def revert_cell_edits(table: Table, edits, original_id: str) -> Table:
    changes = {}
    for e in reversed(list(edits)):
        if e.target == "cell":
            changes[tuple(e.span)] = e.old
    return table.with_cells(changes, original_id)


@dataclass(frozen=True)
class Probe:
    probe_id: str
    base_id: str
    type: ReasoningType
    submode: str
    flip: bool
    expected_label: Label
    text: str
    edits: tuple[EditRecord, ...]
    seed: int
    table_ref: str | None = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def level(self) -> Level:
        return self.type.level

    @property
    def base_label(self) -> Label:
        return self.expected_label.opposite if self.flip else self.expected_label

    def to_dict(self) -> dict:
        out = {"probe_id": self.probe_id, "base_id": self.base_id, "type": self.type.value,
               "level": self.level.value, "submode": self.submode, "flip": self.flip,
               "expected_label": self.expected_label.value, "text": self.text}
        if self.table_ref is not None:
            out["table_ref"] = self.table_ref
        out["edits"] = [e.to_dict() for e in self.edits]
        out["seed"] = self.seed
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Probe":
        return cls(d["probe_id"], d["base_id"], ReasoningType.parse(d["type"]), d.get("submode", ""),
                   bool(d["flip"]), Label(d["expected_label"]), d["text"],
                   tuple(EditRecord.from_dict(e) for e in d["edits"]), int(d["seed"]),
                   d.get("table_ref"), d.get("meta") or {})


def _interval(pair) -> tuple[Decimal, Decimal]:
    lo, hi = (Decimal(str(x)) for x in pair)
    if not 0 < lo <= hi:
        raise ValueError(f"bad interval {pair}")
    return lo, hi


@dataclass(frozen=True)
class GenerationConfig:
    master_seed: int = 20240601
    enabled_types: frozenset = frozenset(ReasoningType)
    flip_halfwidth: Decimal = Decimal("0.5")
    numeration_max_tries: int = 16
    date_window_years: int = 15
    range_small_radius: tuple[int, int] = (1, 5)
    range_fraction: tuple[Decimal, Decimal] = (Decimal("0.10"), Decimal("0.50"))
    rounding_tiers: tuple = DEFAULT_TIERS
    approx_max_steps: int = 3
    scale_error_low: tuple[Decimal, Decimal] = (Decimal("0.5"), Decimal("0.9"))
    scale_error_high: tuple[Decimal, Decimal] = (Decimal("1.1"), Decimal("1.5"))
    arith_error_low: tuple[Decimal, Decimal] = (Decimal("0.8"), Decimal("0.95"))
    arith_error_high: tuple[Decimal, Decimal] = (Decimal("1.05"), Decimal("1.2"))
    max_probes_per_hypothesis: int = 4

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        hw = Decimal(str(self.flip_halfwidth))
        if not 0 < hw < 1:
            raise ValueError("flip_halfwidth must lie in (0, 1)")
        object.__setattr__(self, "flip_halfwidth", hw)
        lo, hi = self.range_small_radius
        if not 0 < lo <= hi:
            raise ValueError("range radius parameters must be positive")
        object.__setattr__(self, "range_fraction", _interval(self.range_fraction))
        for name in ("scale_error_low", "scale_error_high", "arith_error_low", "arith_error_high"):
            object.__setattr__(self, name, _interval(getattr(self, name)))
        if self.max_probes_per_hypothesis < 1:
            raise ValueError("max_probes_per_hypothesis must be at least 1")
        object.__setattr__(self, "enabled_types",
                           frozenset(ReasoningType.parse(t) for t in self.enabled_types))

    @classmethod
    def from_mapping(cls, data: dict) -> "GenerationConfig":
        """Build from string key/values (config files, CLI flags)."""
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, raw in data.items():
            key = key.strip().replace("-", "_")
            if key not in known:
                raise ValueError(f"unknown configuration key {key!r}")
            if isinstance(raw, str):
                raw = raw.strip()
                if key == "enabled_types":
                    raw = [t for t in raw.split(",") if t.strip()]
                elif key in ("master_seed", "numeration_max_tries", "date_window_years",
                             "approx_max_steps", "max_probes_per_hypothesis"):
                    raw = int(raw)
                elif key == "flip_halfwidth":
                    raw = Decimal(raw)
                else:
                    raw = tuple(x.strip() for x in raw.split(","))
                    if key == "range_small_radius":
                        raw = tuple(int(x) for x in raw)
            kwargs[key] = raw
        return cls(**kwargs)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "enabled_types":
                v = [t.value for t in ReasoningType if t in v]
            elif f.name == "rounding_tiers":
                v = [list(t) for t in v]
            elif isinstance(v, tuple):
                v = [str(x) for x in v]
            elif isinstance(v, Decimal):
                v = str(v)
            out[f.name] = v
        return out


def derive_seed(master_seed: int, base_id: str, rtype: ReasoningType, submode: str, occurrence: int) -> int:
    key = "\x1f".join([str(master_seed), base_id, rtype.value, submode, str(occurrence)])
    return int.from_bytes(hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest(), "big")


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)
