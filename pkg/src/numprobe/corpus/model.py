"""Tables, cells, hypotheses and arithmetic annotations."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property

from ..numparse import NumberMention, NumericValue, relative_error, scan_mentions
from .errors import InvalidArithMetadata, TableShapeError


class Label(str, enum.Enum):
    ENTAIL = "Entail"
    CONTRADICT = "Contradict"

    @property
    def opposite(self) -> "Label":
        return Label.CONTRADICT if self is Label.ENTAIL else Label.ENTAIL


_LABEL_WORDS = {
    "entail": Label.ENTAIL, "entailed": Label.ENTAIL, "entailment": Label.ENTAIL, "1": Label.ENTAIL,
    "true": Label.ENTAIL, "supported": Label.ENTAIL, "e": Label.ENTAIL,
    "contradict": Label.CONTRADICT, "contradicted": Label.CONTRADICT, "contradiction": Label.CONTRADICT,
    "0": Label.CONTRADICT, "false": Label.CONTRADICT, "refuted": Label.CONTRADICT, "c": Label.CONTRADICT,
}


def parse_label(raw) -> Label:
    """Strict label reader for dataset files (model outputs use ``evalkit.normalize_label``)."""
    if isinstance(raw, Label):
        return raw
    if isinstance(raw, bool):
        return Label.ENTAIL if raw else Label.CONTRADICT
    key = str(raw).strip().lower()
    try:
        return _LABEL_WORDS[key]
    except KeyError:
        raise ValueError(f"not a binary label: {raw!r}") from None


class Orientation(str, enum.Enum):
    ENTITY_INFOBOX = "EntityInfobox"
    RELATIONAL_GRID = "RelationalGrid"


@dataclass(frozen=True)
class Cell:
    raw: str

    @cached_property
    def mentions(self) -> tuple[NumberMention, ...]:
        return tuple(scan_mentions(self.raw))


Coord = tuple[int, int]


@dataclass(frozen=True)
class Table:
    """A premise table.

    An infobox stores one ``(key, value)`` pair per row; ``headers`` is then
    ``["key", "value"]`` unless the source file says otherwise.  Only column 1
    of an infobox holds facts.
    """

    id: str
    headers: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    orientation: Orientation = Orientation.RELATIONAL_GRID
    title: str | None = None

    def __post_init__(self):
        if self.orientation is Orientation.ENTITY_INFOBOX:
            bad = [i for i, r in enumerate(self.rows) if len(r) != 2]
            if bad:
                raise TableShapeError(f"table {self.id}: infobox rows {bad} are not (key, value) pairs")
        else:
            width = len(self.headers)
            bad = [i for i, r in enumerate(self.rows) if len(r) != width]
            if bad:
                raise TableShapeError(f"table {self.id}: rows {bad} do not have {width} cells")

    @classmethod
    def build(cls, id: str, headers, rows, orientation=None, title=None) -> "Table":
        rows = tuple(tuple(c if isinstance(c, Cell) else Cell(str(c)) for c in r) for r in rows)
        headers = tuple(str(h) for h in headers)
        if orientation is None:
            orientation = _infer_orientation(headers, rows)
        return cls(id, headers, rows, Orientation(orientation), title)

    @property
    def is_grid(self) -> bool:
        return self.orientation is Orientation.RELATIONAL_GRID

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return 2 if not self.is_grid else len(self.headers)

    def cell(self, row: int, col: int) -> Cell:
        return self.rows[row][col]

    def column(self, col: int) -> list[Cell]:
        if not 0 <= col < self.n_cols:
            raise IndexError(f"column {col} out of range for table {self.id}")
        return [r[col] for r in self.rows]

    def fact_coords(self):
        """Coordinates of cells that carry facts (all of a grid; the value column of an infobox)."""
        for i, row in enumerate(self.rows):
            for j in range(len(row)):
                if self.is_grid or j == 1:
                    yield i, j

    def key_text(self, row: int, col: int) -> str:
        """The label naming a fact cell: the infobox key, or the grid column header."""
        return self.rows[row][0].raw if not self.is_grid else self.headers[col]

    def row_label(self, row: int) -> str | None:
        """First cell of a grid row that has no number in it."""
        for cell in self.rows[row]:
            if cell.raw.strip() and not cell.mentions:
                return cell.raw.strip()
        return None

    def with_cells(self, changes: dict[Coord, str], new_id: str) -> "Table":
        rows = [list(r) for r in self.rows]
        for (i, j), raw in changes.items():
            rows[i][j] = Cell(raw)
        return replace(self, id=new_id, rows=tuple(tuple(r) for r in rows))

    def to_dict(self) -> dict:
        out = {"id": self.id}
        if self.title is not None:
            out["title"] = self.title
        out["orientation"] = self.orientation.value
        out["headers"] = list(self.headers)
        out["rows"] = [[c.raw for c in r] for r in self.rows]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Table":
        return cls.build(str(data["id"]), data.get("headers") or [], data["rows"],
                         data.get("orientation"), data.get("title"))

    def linearize(self) -> str:
        """Row-major "header: value" rendering used for prompts."""
        parts = [self.title] if self.title else []
        if self.is_grid:
            for row in self.rows:
                parts.append(" ; ".join(f"{h}: {c.raw}" for h, c in zip(self.headers, row)))
        else:
            parts.extend(f"{k.raw}: {v.raw}" for k, v in self.rows)
        return " | ".join(parts)


def _infer_orientation(headers, rows) -> Orientation:
    if rows and all(len(r) == 2 for r in rows) and (
            not headers or [h.lower() for h in headers] in (["key", "value"], ["attribute", "value"])):
        return Orientation.ENTITY_INFOBOX
    return Orientation.RELATIONAL_GRID


class Operation(str, enum.Enum):
    ADD = "Add"
    SUBTRACT = "Subtract"
    MULTIPLY = "Multiply"
    DIVIDE = "Divide"

    @classmethod
    def parse(cls, raw) -> "Operation":
        key = str(raw).strip().lower()
        aliases = {"+": "add", "sum": "add", "plus": "add", "-": "subtract", "diff": "subtract",
                   "difference": "subtract", "minus": "subtract", "*": "multiply", "x": "multiply",
                   "times": "multiply", "product": "multiply", "/": "divide", "ratio": "divide"}
        key = aliases.get(key, key)
        for op in cls:
            if op.value.lower() == key:
                return op
        raise ValueError(f"unknown operation {raw!r}")

    def apply(self, values) -> NumericValue:
        values = [NumericValue.of(v) for v in values]
        if not values:
            raise InvalidArithMetadata("no operands")
        acc = values[0]
        for v in values[1:]:
            if self is Operation.ADD:
                acc = acc + v
            elif self is Operation.SUBTRACT:
                acc = acc - v
            elif self is Operation.MULTIPLY:
                acc = acc * v
            else:
                if v.is_zero:
                    raise InvalidArithMetadata("division by zero")
                acc = acc / v
        return acc


DIVIDE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ArithMetadata:
    operands: tuple[tuple[NumericValue, Coord], ...]
    operation: Operation
    result: NumericValue

    def __post_init__(self):
        if len(self.operands) < 2:
            raise InvalidArithMetadata("at least two operands are required")
        computed = self.compute()
        if self.operation is Operation.DIVIDE:
            ok = relative_error(computed, self.result) <= DIVIDE_TOLERANCE
        else:
            ok = computed == self.result
        if not ok:
            raise InvalidArithMetadata(f"{self.operation.value} of operands is {computed}, not {self.result}")

    def compute(self) -> NumericValue:
        return self.operation.apply(v for v, _ in self.operands)

    def matches(self, value) -> bool:
        value = NumericValue.of(value)
        if self.operation is Operation.DIVIDE:
            return relative_error(value, self.compute()) <= DIVIDE_TOLERANCE
        return value == self.compute()

    def to_dict(self) -> dict:
        return {"operands": [[str(v), r, c] for v, (r, c) in self.operands],
                "op": self.operation.value, "result": str(self.result)}

    @classmethod
    def from_dict(cls, data: dict) -> "ArithMetadata":
        try:
            operands = tuple((NumericValue.of(str(v)), (int(r), int(c))) for v, r, c in data["operands"])
            return cls(operands, Operation.parse(data["op"]), NumericValue.of(str(data["result"])))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArithMetadata):
                raise
            raise InvalidArithMetadata(f"malformed derivation: {exc}") from exc


@dataclass(frozen=True)
class Hypothesis:
    id: str
    text: str
    table_id: str
    label: Label
    source: str = "tnli"
    arith: ArithMetadata | None = None
    answer: str | None = None
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    @cached_property
    def mentions(self) -> tuple[NumberMention, ...]:
        return tuple(scan_mentions(self.text))

    def to_dict(self) -> dict:
        out = {"id": self.id, "table_id": self.table_id, "hypothesis": self.text,
               "label": self.label.value.lower()}
        if self.source != "tnli":
            out["source"] = self.source
        if self.answer is not None:
            out["answer"] = self.answer
        if self.arith is not None:
            out["derivation"] = self.arith.to_dict()
        return out
