from __future__ import annotations

import hashlib
import json


def _normalize(obj):
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2**53:
        return str(obj)
    return obj


def stable_hash(obj) -> str:
    payload = json.dumps(_normalize(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def table_fp(name: str, rows: list) -> str:
    """Checksum of one persisted memo table; rows must already be in a canonical order."""
    return stable_hash({"table": name, "rows": rows})


def case_fp(check: str, case) -> str:
    return stable_hash({"check": check, "case": case})[:12]
