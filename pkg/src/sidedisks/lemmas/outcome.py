"""Outcome record shared by all verifiers."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["LemmaOutcome", "Rejected", "LEMMA_IDS"]

LEMMA_IDS = ("planar", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "L11", "L12",
             "pentagon", "depth")


class Rejected(Exception):
    """A configuration violates the lemma's hypotheses (not a lemma failure)."""


@dataclass
class LemmaOutcome:
    lemma_id: str
    holds: bool
    witness: dict = field(default_factory=dict)
    seed: int = 0

    def to_json(self) -> dict:
        return {"lemma": self.lemma_id, "holds": self.holds, "seed": self.seed,
                "witness": self.witness}

    @classmethod
    def from_json(cls, obj) -> "LemmaOutcome":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["lemma"], bool(obj["holds"]), dict(obj.get("witness", {})),
                   int(obj.get("seed", 0)))

    def reverify(self) -> "LemmaOutcome":
        """Rebuild the stored configuration and run its verifier again."""
        from .registry import rerun
        return rerun(self)
