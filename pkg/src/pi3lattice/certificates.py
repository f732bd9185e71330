"""Pass/fail records for verified claims."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
NECESSARY_ONLY = "NECESSARY-ONLY"


@dataclass
class Certificate:
    claim: str
    status: str
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"claim": self.claim, "status": self.status}
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.details:
            out["details"] = _plain(self.details)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> Certificate:
        return cls(doc["claim"], doc["status"], doc.get("witness"), doc.get("details", {}))


def _plain(x):
    """Convert numpy and tuple values into JSON-ready builtins."""
    if isinstance(x, Certificate):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "tolist"):
        return _plain(x.tolist())
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int) or type(x).__name__.startswith("int"):
        return int(x)
    return str(x)


def check(claim: str, ok: bool, witness=None, **details) -> Certificate:
    return Certificate(claim, PASS if ok else FAIL, None if ok else witness, details)


def combine(claim: str, parts: dict[str, Certificate]) -> Certificate:
    """Overall certificate; the witness names the first failing stage."""
    failed = next((name for name, c in parts.items() if not c.passed), None)
    return Certificate(
        claim,
        PASS if failed is None else FAIL,
        failed,
        {name: c.to_dict() for name, c in parts.items()},
    )
