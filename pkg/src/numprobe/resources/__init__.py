"""Bundled catalogs: units and formats, and per-type reference tokens."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path


def load_reference_tokens(path=None) -> dict:
    if path is None:
        return _default_tokens()
    return json.loads(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def _default_tokens() -> dict:
    return json.loads(resources.files(__name__).joinpath("reference_tokens.json").read_text("utf-8"))
