"""Check records and JSON reports for queries and theorem sweeps."""

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from core.lie_core import LieAlgebra

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, SKIPPED)


def canonical_json(obj: Any) -> str:
    """Sorted keys, no whitespace; the form that gets hashed."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def algebra_digest(algebra: LieAlgebra, label: Optional[str] = None) -> Dict[str, Any]:
    """dim, field, solvability and derived length, plus a hash of the structure constants."""
    length = algebra.derived_length()
    constants = [[i, j, [algebra.field.format(a) for a in v]] for (i, j), v in algebra.brackets]
    return {
        "label": label,
        "dim": algebra.dim,
        "field": str(algebra.field),
        "solvable": length is not None,
        "derived_length": length,
        "structure_hash": sha256_hex(canonical_json(constants))[:16],
    }


@dataclass
class CheckRecord:
    """One theorem instance on one algebra."""

    check: str
    algebra: str
    status: str
    instance: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Unknown status: {self.status}")

    def sort_key(self):
        return (self.algebra, self.check, self.instance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass
class Report:
    """
    Machine-readable output of every command.

    Records are sorted before serialization, so the JSON is byte-stable for
    identical inputs; timing is only included when recorded.
    """

    command: Dict[str, Any]
    algebras: List[Dict[str, Any]] = field(default_factory=list)
    records: List[CheckRecord] = field(default_factory=list)
    result: Optional[Dict[str, Any]] = None
    timing: Optional[Dict[str, float]] = None

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def extend(self, records: List[CheckRecord]) -> None:
        self.records.extend(records)

    def summary(self) -> Dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.status] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def failed(self) -> bool:
        return any(r.status == FAIL for r in self.records)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> Dict[str, Any]:
        records = [r.to_dict() for r in sorted(self.records, key=CheckRecord.sort_key)]
        out: Dict[str, Any] = {
            "command": self.command,
            "algebras": self.algebras,
        }
        if self.result is not None:
            out["result"] = self.result
        out["records"] = records
        out["summary"] = self.summary()
        out["records_hash"] = sha256_hex(canonical_json(records))
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def error_report(command: Dict[str, Any], error) -> Dict[str, Any]:
    """JSON body for a SolvLieError that aborted a command."""
    return {"command": command, "error": error.to_dict()}
