"""
Verdicts returned by the congruence obstructions
"""

from dataclasses import dataclass, field
from typing import Any, Dict

DISTINGUISHED = "distinguished"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CongruenceVerdict:
    """Outcome of one obstruction: 'distinguished' only when a preserved invariant provably differs.

    An inconclusive verdict never claims the manifolds are congruent.
    """

    status: str
    reason: str
    invariant: str = ""
    payload: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (DISTINGUISHED, INCONCLUSIVE):
            raise ValueError(f"unknown verdict status {self.status!r}")

    @property
    def is_distinguished(self) -> bool:
        return self.status == DISTINGUISHED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "invariant": self.invariant,
            "status": self.status,
            "reason": self.reason,
            "payload": self.payload,
        }
