"""Unit catalog and exact unit conversion."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

from .errors import DimensionMismatch, UnknownUnit
from .values import NumericValue


@dataclass(frozen=True)
class Unit:
    id: str
    family: str
    system: str
    factor: Fraction  # size of one unit in the family's base unit
    symbol: str
    singular: str
    plural: str
    aliases: tuple[str, ...]
    counterpart: str | None = None

    @property
    def is_currency(self) -> bool:
        return self.family.startswith("currency:")

    def surface(self, style: str, value: NumericValue | None = None) -> str:
        """Render the unit name. style is 'symbol' or 'word'."""
        if style == "symbol":
            return self.symbol
        if value is not None and abs(value) == NumericValue.of(1):
            return self.singular
        return self.plural


@dataclass(frozen=True)
class Currency:
    code: str
    symbols: tuple[str, ...]
    words: tuple[str, ...]


def _parse_factor(raw) -> Fraction:
    f = Fraction(str(raw))
    if f <= 0:
        raise ValueError(f"conversion factor must be positive, got {raw!r}")
    return f


@dataclass(eq=False)
class Catalog:
    """Units, currencies and enabled date formats, loaded from a JSON resource."""

    version: str
    units: dict[str, Unit]
    currencies: dict[str, Currency]
    date_formats: tuple[str, ...]
    source: str = "<bundled>"
    _alias_index: dict[str, dict[str, Unit]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for unit in self.units.values():
            per_family = self._alias_index.setdefault(unit.family, {})
            for alias in unit.aliases:
                key = alias.lower()
                other = per_family.get(key)
                if other is not None and other.id != unit.id:
                    raise ValueError(f"alias {alias!r} is ambiguous in family {unit.family}: "
                                     f"{other.id} vs {unit.id}")
                per_family[key] = unit

    @classmethod
    def from_dict(cls, data: dict, source: str = "<dict>") -> "Catalog":
        units = {}
        for raw in data.get("units", []):
            unit = Unit(
                id=raw["id"], family=raw["family"], system=raw.get("system", ""),
                factor=_parse_factor(raw["factor"]), symbol=raw["symbol"],
                singular=raw.get("singular", raw["id"]), plural=raw.get("plural", raw["id"] + "s"),
                aliases=tuple(raw["aliases"]), counterpart=raw.get("counterpart"),
            )
            units[unit.id] = unit
        currencies = {}
        for raw in data.get("currencies", []):
            cur = Currency(raw["code"], tuple(raw.get("symbols", [])), tuple(raw.get("words", [])))
            currencies[cur.code] = cur
            # each currency is its own family: no exchange rates
            units.setdefault(cur.code, Unit(
                id=cur.code, family=f"currency:{cur.code}", system="currency", factor=Fraction(1),
                symbol=cur.symbols[0] if cur.symbols else cur.code, singular=cur.code, plural=cur.code,
                aliases=(cur.code,) + cur.words,
            ))
        for unit in units.values():
            if unit.counterpart is not None and unit.counterpart not in units:
                raise ValueError(f"{unit.id}: unknown counterpart {unit.counterpart!r}")
        return cls(version=str(data.get("version", "0")), units=units, currencies=currencies,
                   date_formats=tuple(data.get("date_formats", ())), source=source)

    # lookups ------------------------------------------------------------

    def unit(self, key: "str | Unit") -> Unit:
        """Look a unit up by id or alias (case-insensitive)."""
        if isinstance(key, Unit):
            return key
        if key in self.units:
            return self.units[key]
        hits = {u.id: u for fam in self._alias_index.values()
                for alias, u in fam.items() if alias == key.lower()}
        if not hits:
            raise UnknownUnit(key)
        if len(hits) > 1:
            raise UnknownUnit(f"{key!r} is ambiguous across families: {sorted(hits)}")
        return next(iter(hits.values()))

    def family(self, name: str) -> list[Unit]:
        return sorted((u for u in self.units.values() if u.family == name), key=lambda u: u.factor)

    def families(self) -> list[str]:
        return sorted({u.family for u in self.units.values() if not u.is_currency})

    def measure_units(self) -> list[Unit]:
        return [u for u in self.units.values() if not u.is_currency]

    def next_smaller(self, unit: "str | Unit") -> Unit | None:
        """Largest unit below ``unit`` in the same family and system."""
        unit = self.unit(unit)
        below = [u for u in self.family(unit.family) if u.system == unit.system and u.factor < unit.factor]
        return below[-1] if below else None

    def next_larger(self, unit: "str | Unit") -> Unit | None:
        unit = self.unit(unit)
        above = [u for u in self.family(unit.family) if u.system == unit.system and u.factor > unit.factor]
        return above[0] if above else None

    def adjacent(self, unit: "str | Unit") -> Unit | None:
        """The next smaller unit, or the next larger one at the bottom of the ladder."""
        return self.next_smaller(unit) or self.next_larger(unit)

    def counterpart(self, unit: "str | Unit") -> Unit | None:
        unit = self.unit(unit)
        return self.units[unit.counterpart] if unit.counterpart else None

    # scanning support ---------------------------------------------------

    @cached_property
    def unit_alias_pattern(self) -> str:
        """Regex alternation of every measurement alias, longest first."""
        aliases = sorted({a for u in self.measure_units() for a in u.aliases}, key=len, reverse=True)
        return "|".join(re.escape(a) for a in aliases)

    def measure_unit_for_alias(self, alias: str) -> Unit:
        key = alias.lower()
        for fam, index in self._alias_index.items():
            if not fam.startswith("currency:") and key in index:
                return index[key]
        raise UnknownUnit(alias)

    @cached_property
    def currency_by_symbol(self) -> dict[str, str]:
        return {s: c.code for c in self.currencies.values() for s in c.symbols}

    @cached_property
    def currency_by_word(self) -> dict[str, str]:
        table = {c.code.lower(): c.code for c in self.currencies.values()}
        table.update({w.lower(): c.code for c in self.currencies.values() for w in c.words})
        return table


def load_catalog(path: "str | Path | None" = None) -> Catalog:
    """Load a catalog file; ``None`` gives the bundled default."""
    if path is None:
        return bundled_catalog()
    path = Path(path)
    return Catalog.from_dict(json.loads(path.read_text(encoding="utf-8")), source=str(path))


@lru_cache(maxsize=1)
def bundled_catalog() -> Catalog:
    text = resources.files("numprobe.resources").joinpath("catalog.json").read_text(encoding="utf-8")
    return Catalog.from_dict(json.loads(text), source="<bundled>")


_override: Catalog | None = None


def default_catalog() -> Catalog:
    """The active catalog: the bundled one unless replaced with ``set_default_catalog``."""
    return _override if _override is not None else bundled_catalog()


def set_default_catalog(catalog: Catalog | None) -> None:
    """Make ``catalog`` the process-wide default (``None`` restores the bundled file)."""
    global _override
    _override = catalog


def convert_unit(value, from_unit, to_unit, catalog: Catalog | None = None) -> NumericValue:
    """Convert ``value`` between two units of the same family.

    The factor ratio is rational, so power-of-ten conversions are exact and
    anything else is correct to the 60-digit working precision.
    """
    catalog = catalog or default_catalog()
    src, dst = catalog.unit(from_unit), catalog.unit(to_unit)
    if src.family != dst.family:
        raise DimensionMismatch(f"cannot convert {src.id} ({src.family}) to {dst.id} ({dst.family})")
    value = NumericValue.of(value)
    if src.id == dst.id:
        return value
    ratio = src.factor / dst.factor
    return value * NumericValue.of(ratio.numerator) / NumericValue.of(ratio.denominator)


def to_base(value, unit, catalog: Catalog | None = None) -> NumericValue:
    """Express ``value`` in the family base unit (factor 1)."""
    catalog = catalog or default_catalog()
    u = catalog.unit(unit)
    return NumericValue.of(value) * NumericValue.of(u.factor.numerator) / NumericValue.of(u.factor.denominator)
