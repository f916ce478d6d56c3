"""Accuracy over prediction records, and the relative shift between two accuracies."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

from ..corpus import Label
from ..taxonomy import ReasoningType
from .errors import DuplicatePrediction, EmptyGoldSet, MissingBaseline
from .labels import Verdict, normalize_label

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PredictionRecord:
    item_id: str
    predicted_label_raw: str

    @property
    def normalized(self) -> Verdict:
        return normalize_label(self.predicted_label_raw)


@dataclass(frozen=True)
class Score:
    correct: int
    total: int
    unparseable: int = 0
    missing: int = 0

    @property
    def accuracy(self) -> float:
        return 100.0 * self.correct / self.total if self.total else 0.0


def _as_mapping(predictions) -> dict[str, Verdict]:
    if isinstance(predictions, dict):
        return {k: normalize_label(v) for k, v in predictions.items()}
    out: dict[str, Verdict] = {}
    for rec in predictions:
        if not isinstance(rec, PredictionRecord):
            rec = PredictionRecord(*rec)
        if rec.item_id in out:
            raise DuplicatePrediction(f"item {rec.item_id!r} predicted more than once")
        out[rec.item_id] = rec.normalized
    return out


def score(predictions, gold) -> Score:
    """Accuracy of ``predictions`` against ``gold`` (``{item_id: Label}``).

    Unparseable and missing predictions both count as wrong; they are tallied
    separately.  Predictions for ids outside ``gold`` are ignored.
    """
    if not gold:
        raise EmptyGoldSet("no gold items to score")
    preds = _as_mapping(predictions)
    correct = unparseable = missing = 0
    for item_id, label in gold.items():
        v = preds.get(item_id)
        if v is None:
            missing += 1
        elif v is Verdict.UNPARSEABLE:
            unparseable += 1
        elif v.matches(label):
            correct += 1
    return Score(correct, len(gold), unparseable, missing)


def shift_pct(acc_base: float, acc_probe: float) -> float | None:
    """(P - H) / H x 100; ``None`` when the base accuracy is zero."""
    if acc_base == 0:
        return None
    return (acc_probe - acc_base) / acc_base * 100.0


@dataclass(frozen=True)
class EvalRow:
    reasoning_type: ReasoningType
    flip: bool
    n_base: int
    n_probe: int
    acc_base: float
    acc_probe: float

    @property
    def shift_pct(self) -> float | None:
        return shift_pct(self.acc_base, self.acc_probe)

    @property
    def key(self) -> tuple[ReasoningType, bool]:
        return self.reasoning_type, self.flip


def _acc(s) -> tuple[float, int]:
    return (s.accuracy, s.total) if isinstance(s, Score) else (float(s), 0)


def shift_report(base_scores: dict, probe_scores: dict) -> list[EvalRow]:
    """One row per ``(reasoning_type, flip)`` key of ``probe_scores``.

    Values may be ``Score`` objects or bare accuracies in [0, 100].
    """
    rows = []
    for key in sorted(probe_scores, key=lambda k: (list(ReasoningType).index(ReasoningType.parse(k[0])), k[1])):
        if key not in base_scores:
            raise MissingBaseline(f"no base score for {key[0]} (flip={key[1]})")
        acc_b, n_b = _acc(base_scores[key])
        acc_p, n_p = _acc(probe_scores[key])
        for name, acc in (("base", acc_b), ("probe", acc_p)):
            if not 0 <= acc <= 100:
                raise ValueError(f"{name} accuracy {acc} outside [0, 100]")
        rows.append(EvalRow(ReasoningType.parse(key[0]), bool(key[1]), n_b, n_p, acc_b, acc_p))
    return rows


def evaluate(probes, base_predictions, probe_predictions) -> list[EvalRow]:
    """Score probes and their base hypotheses per ``(type, flip)`` group.

    The base set of a group is the distinct base hypotheses its probes came
    from; their gold label is recovered from each probe's label and flip flag.
    """
    groups: dict[tuple, dict] = defaultdict(lambda: {"base": {}, "probe": {}})
    for p in probes:
        g = groups[(p.type, p.flip)]
        g["probe"][p.probe_id] = p.expected_label
        g["base"][p.base_id] = p.base_label
    base_preds = _as_mapping(base_predictions)
    probe_preds = _as_mapping(probe_predictions)
    base_scores, probe_scores = {}, {}
    for key, g in groups.items():
        if not any(b in base_preds for b in g["base"]):
            raise MissingBaseline(f"no base predictions for the {key[0].value} (flip={key[1]}) probes")
        base_scores[key] = score(base_preds, g["base"])
        probe_scores[key] = score(probe_preds, g["probe"])
        for name, s in (("base", base_scores[key]), ("probe", probe_scores[key])):
            if s.missing:
                log.warning("%s/%s: %d of %d %s predictions missing, counted incorrect",
                            key[0].value, "flip" if key[1] else "preserve", s.missing, s.total, name)
    return shift_report(base_scores, probe_scores)
