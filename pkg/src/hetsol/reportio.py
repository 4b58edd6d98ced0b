"""Machine-readable run reports: one JSON document per invocation, CSV export.

Reports are deterministic given (command, seed, mode, config): the only
fields that vary between identical runs are the timing block and per-record
seconds, which `normalized_json` strips for byte comparison.
"""

from __future__ import annotations

import csv
import io
import json
import platform
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

REPORT_SCHEMA = "hetsol-report/1"


@dataclass(frozen=True)
class Report:
    command: str
    mode: str
    seed: int
    records: tuple          # CheckRecord-like: objects with .as_dict()
    config: dict
    created: str
    environment: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self) -> dict:
        recs = [r.as_dict() for r in self.records]
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "mode": self.mode,
            "seed": self.seed,
            "config": self.config,
            "records": recs,
            "summary": {
                "total": len(recs),
                "passed": sum(1 for r in recs if r["passed"]),
                "failed": sum(1 for r in recs if not r["passed"]),
                "all_passed": all(r["passed"] for r in recs),
            },
            "timings": {
                "created": self.created,
                "seconds": [{"name": r["name"], "seconds": r["seconds"]}
                            for r in recs],
            },
            "environment": self.environment,
        }


def make_report(command: str, mode: str, seed: int, records, config=None) -> Report:
    env = {
        "python": sys.version.split()[0],
        "platform": platform.system().lower(),
        "machine": platform.machine(),
    }
    created = datetime.now(timezone.utc).isoformat()
    return Report(command, mode, seed, tuple(records), dict(config or {}),
                  created, env)


def report_to_json(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"


def write_report(report: Report, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(report_to_json(report))


def normalized_json(doc: str) -> str:
    """Strip the volatile timing fields; the rest must be byte-identical
    across runs with the same seed, mode and config."""
    data = json.loads(doc)
    data.pop("timings", None)
    for rec in data.get("records", []):
        rec.pop("seconds", None)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def records_to_csv(records) -> str:
    """Plot-ready flat table of the per-check results."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["name", "mode", "trials", "defect", "exact", "passed",
                     "seconds", "note"])
    for r in records:
        d = r.as_dict() if hasattr(r, "as_dict") else dict(r)
        writer.writerow([d["name"], d["mode"], d["trials"],
                         repr(d["defect"]), d["exact"], d["passed"],
                         d["seconds"], d.get("note", "")])
    return out.getvalue()


def write_csv(records, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(records_to_csv(records))
