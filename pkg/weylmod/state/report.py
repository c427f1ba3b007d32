"""Status record of a `verify` run: which checks ran, how long they took and how each run ended.

Timestamps and durations live here only; stdout payloads never carry them.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

from weylmod.state.cache import write_json_atomic

REPORT_SCHEMA = "weylmod-verify/1"
TERMINAL_PHASES = frozenset({"passed", "failed", "error"})


def utc_now() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")


def _empty_report() -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "phase": "not_started",
        "checks": [],
        "failed_check": None,
        "config_hash": None,
        "started_at": None,
        "updated_at": None,
        "finished_at": None,
        "history": [],
    }


def read_report(path: Path) -> dict:
    path = Path(path)
    if not path.exists():
        return _empty_report()
    report = json.loads(path.read_text(encoding="utf-8"))
    # older or foreign records start over but keep their history
    if report.get("schema") != REPORT_SCHEMA:
        return {**_empty_report(), "history": list(report.get("history") or [])}
    return report


def update_report(path: Path, **updates) -> dict:
    report = read_report(path)
    report.update(updates)
    now = utc_now()
    report["updated_at"] = now
    if report.get("started_at") is None:
        report["started_at"] = now
    if report.get("phase") in TERMINAL_PHASES and report.get("finished_at") is None:
        report["finished_at"] = now
    write_json_atomic(Path(path), report)
    return report


def start_report(path: Path, *, config_hash: str, settings: dict) -> dict:
    """Reset the per-run fields; history from earlier runs is kept."""
    return update_report(
        path,
        phase="running",
        checks=[],
        failed_check=None,
        config_hash=config_hash,
        settings=settings,
        started_at=utc_now(),
        finished_at=None,
    )


def record_checks(path: Path, phase: str, checks: list[dict]) -> dict:
    return update_report(path, phase=phase, checks=checks)


def finish_report(path: Path, *, exit_code: int, failed_check: str | None) -> dict:
    phase = "passed" if exit_code == 0 else ("error" if exit_code == 3 else "failed")
    report = update_report(path, phase=phase, failed_check=failed_check)
    history = list(report.get("history") or [])
    history.append(
        {
            "finished_at": report["finished_at"],
            "exit_code": exit_code,
            "failed_check": failed_check,
            "config_hash": report.get("config_hash"),
        }
    )
    return update_report(path, history=history)
