"""Optional client for an externally hosted chat-completion endpoint.

Configured through ``NUMPROBE_API_URL``, ``NUMPROBE_API_KEY`` and
``NUMPROBE_MODEL``.  Nothing else in the package imports this module.
"""

from __future__ import annotations

import json
import os
import urllib.request
from dataclasses import dataclass


@dataclass(frozen=True)
class ChatClient:
    url: str
    model: str
    api_key: str | None = None
    timeout: float = 60.0

    @classmethod
    def from_env(cls, environ=None) -> "ChatClient":
        env = os.environ if environ is None else environ
        missing = [k for k in ("NUMPROBE_API_URL", "NUMPROBE_MODEL") if not env.get(k)]
        if missing:
            raise RuntimeError(f"set {', '.join(missing)} to use the model client")
        return cls(env["NUMPROBE_API_URL"], env["NUMPROBE_MODEL"], env.get("NUMPROBE_API_KEY"))

    def request_body(self, prompt: str) -> dict:
        return {"model": self.model, "messages": [{"role": "user", "content": prompt}], "temperature": 0}

    def complete(self, prompt: str) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        req = urllib.request.Request(self.url, json.dumps(self.request_body(prompt)).encode(), headers)
        with urllib.request.urlopen(req, timeout=self.timeout) as resp:
            data = json.load(resp)
        return data["choices"][0]["message"]["content"]

    def predict(self, items) -> list[tuple[str, str]]:
        """``items`` are ``(item_id, prompt)`` pairs; returns ``(item_id, raw answer)`` pairs."""
        return [(item_id, self.complete(prompt)) for item_id, prompt in items]
