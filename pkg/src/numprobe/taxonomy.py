"""The eleven numerical reasoning types and their four levels."""

from __future__ import annotations

import enum


class Level(str, enum.Enum):
    R1 = "R1"  # representation
    R2 = "R2"  # number sense
    R3 = "R3"  # manipulation
    R4 = "R4"  # complex reasoning


class ReasoningType(str, enum.Enum):
    NUMERATION = "Numeration"
    HETEROGENEOUS = "Heterogeneous"
    NEGATIVE = "Negative"
    SCALE = "Scale"
    COMPARISON = "Comparison"
    APPROXIMATION = "Approximation"
    RANGE = "Range"
    SORTING = "Sorting"
    ARITHMETIC = "Arithmetic"
    WORD_PROBLEM = "WordProblem"
    COUNTERFACTUAL = "Counterfactual"

    @property
    def level(self) -> Level:
        return _LEVELS[self]

    @property
    def slug(self) -> str:
        return self.value.lower()

    @classmethod
    def parse(cls, name: "str | ReasoningType") -> "ReasoningType":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "").replace("-", "").replace(" ", "")
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown reasoning type {name!r}")


_RT = ReasoningType
_LEVELS = {
    _RT.NUMERATION: Level.R1, _RT.HETEROGENEOUS: Level.R1, _RT.NEGATIVE: Level.R1,
    _RT.SCALE: Level.R2, _RT.COMPARISON: Level.R2, _RT.APPROXIMATION: Level.R2, _RT.RANGE: Level.R2,
    _RT.SORTING: Level.R3, _RT.ARITHMETIC: Level.R3,
    _RT.WORD_PROBLEM: Level.R4, _RT.COUNTERFACTUAL: Level.R4,
}
