"""Reports: per-claim findings with counts and reproducible witnesses."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from .checks import Check

PASS, FAIL = "pass", "fail"


def jsonable(v: Any) -> Any:
    """Tuples become lists and numpy scalars become ints, so values survive a JSON round trip."""
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if hasattr(v, "item") and not isinstance(v, (str, bytes)):
        return v.item()
    return v


@dataclass
class Finding:
    claim: str
    status: str
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    detail: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be {PASS!r} or {FAIL!r}")
        self.counts = jsonable(self.counts)
        self.witnesses = jsonable(self.witnesses)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @classmethod
    def of(cls, claim: str, ok: bool, counts: Optional[dict] = None, witnesses=(), detail: str = "") -> Finding:
        return cls(claim, PASS if ok else FAIL, dict(counts or {}), list(witnesses), detail)

    @classmethod
    def from_check(cls, claim: str, chk: Check, **extra) -> Finding:
        counts = {"cases": chk.cases, "exhaustive": chk.exhaustive}
        if chk.seed is not None:
            counts["seed"] = chk.seed
        counts.update(chk.counts)
        counts.update(extra)
        return cls.of(claim, chk.ok, counts, [] if chk.witness is None else [chk.witness], chk.detail)


@dataclass
class Report:
    command: str
    inputs_digest: str
    findings: list[Finding] = field(default_factory=list)
    seed: int = 0
    budget: int = 0

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.findings)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def add(self, finding: Finding) -> Finding:
        self.findings.append(finding)
        return finding

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(d["command"], d["inputs_digest"], [Finding(**f) for f in d["findings"]],
                   d["seed"], d["budget"])


def _counts_text(counts: dict) -> str:
    return " ".join(f"{k}={json.dumps(v)}" for k, v in counts.items())


def emit_report(report: Report, fmt: str = "human") -> str:
    if fmt == "structured":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt != "human":
        raise ValueError(f"unknown format {fmt!r}")
    width = max([len("CLAIM")] + [len(f.claim) for f in report.findings])
    lines = [
        f"command: {report.command}",
        f"inputs:  sha256:{report.inputs_digest}",
        f"seed:    {report.seed}    budget: {report.budget}",
        "",
        f"{'CLAIM':<{width}}  STATUS  COUNTS",
    ]
    for f in report.findings:
        lines.append(f"{f.claim:<{width}}  {f.status.upper():<6}  {_counts_text(f.counts)}".rstrip())
        for w in f.witnesses:
            lines.append(f"{'':<{width}}  witness: {json.dumps(w)}")
        if f.detail:
            lines.append(f"{'':<{width}}  {f.detail}")
    failed = sum(not f.ok for f in report.findings)
    lines += ["", f"result: {'PASS' if report.ok else 'FAIL'} "
                  f"({len(report.findings) - failed} passed, {failed} failed)"]
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))
