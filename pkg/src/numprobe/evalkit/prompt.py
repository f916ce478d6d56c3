"""Few-shot prompts for generative NLI models."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..corpus import Label, Table
from .errors import InsufficientShots

DEFAULT_INSTRUCTION = (
    "Decide whether the hypothesis is entailed or contradicted by the table. "
    "Answer with one word: Entail or Contradict."
)


@dataclass(frozen=True)
class Shot:
    table: Table | str
    hypothesis: str
    label: Label
    split: str = "train"


@dataclass(frozen=True)
class PromptSpec:
    instruction: str = DEFAULT_INSTRUCTION
    k: int = 2
    shots: tuple[Shot, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        leaked = [s.hypothesis for s in self.shots if s.split != "train"]
        if leaked:
            raise ValueError(f"shots must come from the training split, got {leaked[:3]}")


def linearize(table: Table | str) -> str:
    return table if isinstance(table, str) else table.linearize()


def _block(table, hypothesis: str, answer: str = "") -> str:
    return f"Table: {linearize(table)}\nHypothesis: {hypothesis}\nAnswer:{' ' + answer if answer else ''}"


def build_prompt(spec: PromptSpec, table: Table | str, hypothesis: str) -> str:
    """Instruction, then ``spec.k`` solved examples, then the query (answer left blank)."""
    if len(spec.shots) < spec.k:
        raise InsufficientShots(f"{spec.k} shots requested, {len(spec.shots)} available")
    parts = [spec.instruction]
    parts += [_block(s.table, s.hypothesis, Label(s.label).value) for s in spec.shots[: spec.k]]
    parts.append(_block(table, hypothesis))
    return "\n\n".join(parts)
