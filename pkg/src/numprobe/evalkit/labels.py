"""Mapping free-form model output onto the two NLI labels."""

from __future__ import annotations

import enum
import re

from ..corpus import Label


class Verdict(str, enum.Enum):
    ENTAIL = "Entail"
    CONTRADICT = "Contradict"
    UNPARSEABLE = "Unparseable"

    def matches(self, gold: Label) -> bool:
        return self.value == Label(gold).value


_PREFIXES = (("entail", Verdict.ENTAIL), ("support", Verdict.ENTAIL),
             ("contradict", Verdict.CONTRADICT), ("refute", Verdict.CONTRADICT))
_WORDS = {"yes": Verdict.ENTAIL, "true": Verdict.ENTAIL, "no": Verdict.CONTRADICT, "false": Verdict.CONTRADICT}
_LEAD = re.compile(r"^\W*(?:(?:answer|label|prediction)\s*[:=-]\s*)?\W*", re.IGNORECASE)


def normalize_label(raw) -> Verdict:
    """First word of ``raw`` read as a label, case-insensitively; Unparseable otherwise."""
    if isinstance(raw, Verdict):
        return raw
    if isinstance(raw, Label):
        return Verdict(raw.value)
    if raw is None:
        return Verdict.UNPARSEABLE
    text = _LEAD.sub("", str(raw).strip())
    word = re.match(r"[a-z]*", text.lower()).group(0)
    if not word:
        return Verdict.UNPARSEABLE
    if word in _WORDS:
        return _WORDS[word]
    for prefix, verdict in _PREFIXES:
        if word.startswith(prefix):
            return verdict
    return Verdict.UNPARSEABLE
