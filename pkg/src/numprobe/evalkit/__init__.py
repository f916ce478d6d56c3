"""Scoring predictions on base hypotheses and probes, and the accuracy-shift report."""

from .errors import DuplicatePrediction, EmptyGoldSet, EvalError, InsufficientShots, MissingBaseline
from .io import dump_predictions, load_predictions
from .labels import Verdict, normalize_label
from .prompt import DEFAULT_INSTRUCTION, PromptSpec, Shot, build_prompt, linearize
from .report import report_csv, report_text
from .scoring import EvalRow, PredictionRecord, Score, evaluate, score, shift_pct, shift_report

__all__ = [
    "DEFAULT_INSTRUCTION", "DuplicatePrediction", "EmptyGoldSet", "EvalError", "EvalRow",
    "InsufficientShots", "MissingBaseline", "PredictionRecord", "PromptSpec", "Score", "Shot", "Verdict",
    "build_prompt", "dump_predictions", "evaluate", "linearize", "load_predictions", "normalize_label",
    "report_csv", "report_text", "score", "shift_pct", "shift_report",
]
