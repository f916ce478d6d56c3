"""Corpus-level probe generation."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

from ..corpus import Corpus, Hypothesis, Table
from ..taxonomy import ReasoningType
from .model import GenerationConfig, Mode, NoApplicableMention, Probe
from .numeracy import gen_heterogeneous, gen_negative, gen_numeration
from .sense import gen_approximation, gen_comparison, gen_range, gen_scale
from .structure import (counterfactual_table, gen_arithmetic, gen_counterfactual, gen_sorting,
                        gen_wordproblem)

log = logging.getLogger(__name__)
RT = ReasoningType

GENERATORS = {
    RT.NUMERATION: gen_numeration,
    RT.HETEROGENEOUS: gen_heterogeneous,
    RT.NEGATIVE: gen_negative,
    RT.SCALE: gen_scale,
    RT.COMPARISON: gen_comparison,
    RT.APPROXIMATION: gen_approximation,
    RT.RANGE: gen_range,
    RT.SORTING: gen_sorting,
    RT.ARITHMETIC: gen_arithmetic,
    RT.WORD_PROBLEM: gen_wordproblem,
    RT.COUNTERFACTUAL: gen_counterfactual,
}

# modes each type defines; range probes never flip
MODES = {t: (Mode.PRESERVE, Mode.FLIP) for t in RT}
MODES[RT.RANGE] = (Mode.PRESERVE,)


@dataclass
class Skip:
    base_id: str
    type: ReasoningType
    mode: Mode
    reason: str

    def to_dict(self) -> dict:
        return {"base_id": self.base_id, "type": self.type.value, "mode": self.mode.value, "reason": self.reason}


@dataclass
class ProbeSet:
    probes: list[Probe] = field(default_factory=list)
    tables: dict[str, Table] = field(default_factory=dict)
    skips: list[Skip] = field(default_factory=list)

    def counts(self) -> Counter:
        """Probe counts keyed by (type, flip)."""
        return Counter((p.type, p.flip) for p in self.probes)

    def type_counts(self) -> Counter:
        return Counter(p.type for p in self.probes)

    def heterogeneous_subtypes(self) -> Counter:
        c = Counter()
        for p in self.probes:
            if p.type is RT.HETEROGENEOUS:
                c.update(p.meta.get("subtypes", ()))
        return c

    def __len__(self) -> int:
        return len(self.probes)


def generate_for(h: Hypothesis, t: Table | None, rtype: ReasoningType, mode: Mode,
                 config: GenerationConfig) -> list[Probe]:
    rtype = ReasoningType.parse(rtype)
    if mode not in MODES[rtype]:
        raise ValueError(f"{rtype.value} defines no {mode.value} probes")
    return GENERATORS[rtype](h, t, mode, config)


def generate_all(corpus: Corpus, config: GenerationConfig | None = None,
                 modes=(Mode.PRESERVE, Mode.FLIP)) -> ProbeSet:
    """Apply every enabled generator to every hypothesis.

    Order is stable (hypothesis id, type declaration order, preserve before
    flip), and every random draw is seeded per probe, so the result depends on
    the corpus and configuration only.  Per-item failures land in ``skips``.
    """
    config = config or GenerationConfig()
    out = ProbeSet()
    for h in sorted(corpus.hypotheses, key=lambda h: h.id):
        t = corpus.tables.get(h.table_id)
        for rtype in RT:
            if rtype not in config.enabled_types:
                continue
            for mode in MODES[rtype]:
                if mode not in modes:
                    continue
                try:
                    probes = GENERATORS[rtype](h, t, mode, config)
                except NoApplicableMention as exc:
                    out.skips.append(Skip(h.id, rtype, mode, str(exc)))
                    continue
                except (ValueError, ArithmeticError, KeyError, IndexError) as exc:
                    log.warning("generator %s/%s failed on %s: %s", rtype.value, mode.value, h.id, exc)
                    out.skips.append(Skip(h.id, rtype, mode, f"error: {exc}"))
                    continue
                for p in probes:
                    if p.table_ref is not None and t is not None:
                        out.tables[p.table_ref] = counterfactual_table(p, t)
                out.probes.extend(probes)
    return out
