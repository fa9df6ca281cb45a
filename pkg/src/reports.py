"""
Suite reports: one record per case, rendered as a pandas table or as json
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json
from dataclasses import dataclass, field
from numbers import Number
from typing import List, Optional

import pandas as pd

PASS = "pass"
FAIL = "fail"


@dataclass
class CaseRecord:
    id: str
    status: str
    witness: Optional[str] = None

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        record = {"id": self.id, "status": self.status}
        if self.witness is not None:
            record["witness"] = self.witness
        return record


def _pieces(residual):
    """Flatten a residual into its printable nonzero components."""
    if residual is None:
        return []
    if isinstance(residual, (tuple, list)):
        return [p for item in residual for p in _pieces(item)]
    if isinstance(residual, dict):
        return [p for item in residual.values() for p in _pieces(item)]
    if isinstance(residual, Number):
        return [] if residual == 0 else [residual]
    return [] if residual.is_zero() else [residual]


def term_count(residual):
    count = 0
    for piece in _pieces(residual):
        if isinstance(piece, Number):
            count += 1
        elif hasattr(piece, "terms"):
            count += len(piece.terms)
        elif hasattr(piece, "parts"):
            count += sum(len(part.terms) for part in piece.parts)
        elif hasattr(piece, "on_coords"):
            count += sum(len(v.terms) for v in piece.on_coords + piece.on_theta)
        else:
            count += 1
    return count


def _printable(piece):
    return str(piece) if isinstance(piece, Number) else piece.pretty()


def residual_case(case_id, residual):
    """A case passes when its residual is exactly zero."""
    pieces = _pieces(residual)
    if not pieces:
        return CaseRecord(case_id, PASS)
    count = term_count(residual)
    noun = "term" if count == 1 else "terms"
    witness = f"{count} {noun}: " + " | ".join(_printable(p) for p in pieces)
    return CaseRecord(case_id, FAIL, witness)


def expectation_case(case_id, ok, witness):
    """Case for a check that has no residual, e.g. an expected failure."""
    return CaseRecord(case_id, PASS) if ok else CaseRecord(case_id, FAIL, witness)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: List[CaseRecord] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self):
        return all(case.passed for case in self.cases)

    @property
    def failures(self):
        return [case for case in self.cases if not case.passed]

    def add(self, case):
        self.cases.append(case)

    def extend(self, other, prefix=None):
        for case in other.cases:
            case_id = f"{prefix}/{case.id}" if prefix else case.id
            self.cases.append(CaseRecord(case_id, case.status, case.witness))

    def stats(self):
        return {
            "cases": len(self.cases),
            "passed": len(self.cases) - len(self.failures),
            "failed": len(self.failures),
            "elapsed_ms": self.elapsed_ms,
        }

    def to_dict(self):
        return {
            "suite": self.suite,
            "cases": [case.to_dict() for case in self.cases],
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, payload):
        cases = [CaseRecord(c["id"], c["status"], c.get("witness")) for c in payload["cases"]]
        return cls(payload["suite"], payload["seed"], cases, payload["elapsed_ms"])

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_frame(self):
        rows = [{"id": c.id, "status": c.status, "witness": c.witness or ""} for c in self.cases]
        return pd.DataFrame(rows, columns=["id", "status", "witness"])

    def to_text(self):
        stats = self.stats()
        verdict = "PASS" if self.passed else "FAIL"
        lines = [
            f"suite: {self.suite}  seed: {self.seed}  elapsed: {self.elapsed_ms} ms",
            f"{verdict}: {stats['passed']}/{stats['cases']} cases passed",
        ]
        if self.cases:
            lines.append(self.to_frame().to_string(index=False))
        return "\n".join(lines) + "\n"


FORMATS = ("text", "json")


def emit_report(report, fmt="text", path=None):
    """Write the report to path, or to stdout when no path is given."""
    if fmt not in FORMATS:
        raise ValueError(f"Unknown report format '{fmt}' (expected one of {', '.join(FORMATS)})")
    payload = report.to_json() + "\n" if fmt == "json" else report.to_text()
    if path is None:
        sys.stdout.write(payload)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(payload)
