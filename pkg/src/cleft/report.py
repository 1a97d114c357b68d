"""Report assembly and rendering (JSON and a plain table)."""

from __future__ import annotations

import json

from .checks import EVIDENCE, FAIL, PASS

SCHEMA_VERSION = 1


def build_report(config: dict, entries: list, timings: dict = None) -> dict:
    """``entries`` is a list of (job key, [Check]) in a fixed job order;
    ``timings`` maps job keys to seconds and is only included when given."""
    rows = []
    for key, checks in entries:
        for c in checks:
            row = c.as_dict()
            if timings is not None:
                row["elapsed"] = round(timings[key], 4)
            rows.append(row)
    counts = {PASS: 0, FAIL: 0, EVIDENCE: 0}
    for r in rows:
        counts[r["verdict"]] += 1
    return {
        "schemaVersion": SCHEMA_VERSION,
        "config": config,
        "summary": {"total": len(rows), "pass": counts[PASS], "fail": counts[FAIL],
                    "evidence": counts[EVIDENCE]},
        "entries": rows,
    }


def report_ok(report: dict) -> bool:
    return report["summary"]["fail"] == 0


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    lines = []
    width = max((len(r["checkId"]) for r in report["entries"]), default=10)
    for r in report["entries"]:
        line = f"{r['verdict'].upper():8} {r['checkId']:<{width}}  {r['paperRef']}"
        if "witness" in r:
            line += f"  [{r['witness']}]"
        if "elapsed" in r:
            line += f"  ({r['elapsed']}s)"
        lines.append(line)
    s = report["summary"]
    lines.append(f"total {s['total']}: {s['pass']} pass, {s['fail']} fail, {s['evidence']} evidence")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    return render_json(report) if fmt == "json" else render_text(report)
