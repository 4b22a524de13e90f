"""
Report rendering for congruence-kit commands
Collects claims and renders them as terminal text or deterministic JSON
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.verdict import CongruenceVerdict

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
DISTINGUISHED = "distinguished"
ERROR = "error"

STATUSES = (PASS, FAIL, INCONCLUSIVE, DISTINGUISHED, ERROR)
FAILED = (FAIL, ERROR)

STATUS_MARKERS = {
    PASS: "✅",
    DISTINGUISHED: "✅",
    INCONCLUSIVE: "⚠️",
    FAIL: "❌",
    ERROR: "❌",
}


@dataclass
class Claim:
    """One checked statement: an id, a status and the data behind it."""

    id: str
    status: str
    payload: Dict[str, Any] = field(default_factory=dict)
    message: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown claim status {self.status!r}")

    @property
    def failed(self) -> bool:
        return self.status in FAILED

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "status": self.status, "payload": self.payload}


def claim_from_verdict(claim_id: str, verdict: CongruenceVerdict) -> Claim:
    payload = dict(verdict.payload)
    payload["reason"] = verdict.reason
    return Claim(claim_id, verdict.status, payload, verdict.reason)


def check(claim_id: str, ok: bool, payload: Optional[Dict[str, Any]] = None, message: str = "") -> Claim:
    """A pass/fail claim."""
    return Claim(claim_id, PASS if ok else FAIL, payload or {}, message)


@dataclass
class Report:
    """Everything a command has to say; the exit status follows from the claims."""

    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    claims: List[Claim] = field(default_factory=list)
    verdict: Optional[str] = None

    def add(self, claim: Claim) -> Claim:
        self.claims.append(claim)
        return claim

    def add_input(self, token: str, digest: str):
        self.inputs[token] = digest

    @property
    def exit_status(self) -> int:
        return 1 if any(c.failed for c in self.claims) else 0

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "command": self.command,
            "inputs": dict(self.inputs),
            "claims": [c.to_dict() for c in self.claims],
        }
        if self.verdict is not None:
            data["verdict"] = self.verdict
        data["exit_status"] = self.exit_status
        return data

    def render_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"📋 {self.command}"]
        for token, digest in self.inputs.items():
            lines.append(f"   input {token}  sha256:{digest[:16]}")
        for claim in self.claims:
            marker = STATUS_MARKERS[claim.status]
            detail = claim.message or _summarise(claim.payload)
            lines.append(f"{marker} {claim.id}: {claim.status}" + (f"  {detail}" if detail else ""))
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        passed = sum(1 for c in self.claims if not c.failed)
        lines.append(f"{passed}/{len(self.claims)} claims without failure")
        return "\n".join(lines)

    def render(self, as_json: bool) -> str:
        return self.render_json() if as_json else self.render_text()


def _summarise(payload: Dict[str, Any]) -> str:
    parts = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            continue
        parts.append(f"{key}={value}")
    return ", ".join(parts)
