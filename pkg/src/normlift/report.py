"""Schema-versioned verification reports, rendered as JSON, TSV or text."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = "1.0"
STATUSES = ("pass", "fail", "finding", "error")


@dataclass
class Case:
    id: str
    status: str
    values: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class Report:
    command: str
    parameters: dict[str, Any]
    cases: list[Case] = field(default_factory=list)
    precision: dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add(self, case: Case) -> None:
        self.cases.append(case)

    @property
    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.cases:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(c.status in ("pass", "finding") for c in self.cases)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "precision": self.precision,
            "summary": self.counts,
            "cases": [asdict(c) for c in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(d["command"], d["parameters"], [Case(**c) for c in d["cases"]],
                   d.get("precision", {}), d["schema_version"])

    def to_tsv(self) -> str:
        keys = sorted({k for c in self.cases for k in c.values})
        rows = ["\t".join(["id", "status", "seconds"] + keys)]
        for c in self.cases:
            rows.append("\t".join([c.id, c.status, f"{c.seconds:.4f}"] +
                                  [_flat(c.values.get(k, "")) for k in keys]))
        return "\n".join(rows) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}  {_flat(self.parameters)}"]
        for c in self.cases:
            lines.append(f"[{c.status.upper():7}] {c.id}")
            for k, v in c.values.items():
                lines.append(f"          {k}: {_flat(v)}")
        n = self.counts
        lines.append(f"{n['pass']} passed, {n['fail']} failed, {n['finding']} findings, {n['error']} errors")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "tsv": self.to_tsv, "text": self.to_text}[fmt]()


def _flat(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)
