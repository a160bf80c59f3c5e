"""Structured verification outcomes and their JSON/text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, ERROR = "PASS", "FAIL", "ERROR"
EXIT_CODES = {PASS: 0, FAIL: 1, ERROR: 2}


@dataclass
class VerificationReport:
    claim: str
    instance: Any
    status: str
    witnesses: dict = field(default_factory=dict)
    seed: int = 0
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in EXIT_CODES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a FAIL report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "instance": self.instance,
            "status": self.status,
            "witnesses": self.witnesses,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def as_text(self) -> str:
        lines = [f"{self.claim}: {self.status}", f"  instance: {json.dumps(self.instance, sort_keys=True)}"]
        for key in sorted(self.witnesses):
            lines.append(f"  {key}: {json.dumps(self.witnesses[key], sort_keys=True)}")
        lines.append(f"  seed: {self.seed}  elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines) + "\n"
