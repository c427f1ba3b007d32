from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Any, Callable, Hashable, Iterator

from weylmod.errors import CacheError
from weylmod.fingerprints import table_fp

CACHE_FORMAT = "weylmod-cache/1"


def write_json_atomic(path: Path, data: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(data, indent=2, sort_keys=True), encoding="utf-8")
    tmp.replace(path)


def _plain(key) -> Any:
    if isinstance(key, tuple):
        return [_plain(v) for v in key]
    return key


def _tupled(data) -> Any:
    if isinstance(data, list):
        return tuple(_tupled(v) for v in data)
    return data


def _encode_value(value) -> Any:
    if isinstance(value, dict):
        return sorted([_plain(k), str(v)] for k, v in value.items())
    return str(value)


def _decode_value(data) -> Any:
    if isinstance(data, list):
        return {_tupled(k): int(v) for k, v in data}
    if not isinstance(data, str):
        raise CacheError(f"Unexpected cached value {data!r}.")
    return int(data)


class MemoTable:
    """Thread-safe memo: insert-if-absent, and a second insert must agree with the first.

    key_factory rebuilds a key from its JSON form once lists are turned back into tuples.
    """

    def __init__(self, name: str, key_factory: Callable[[tuple], Hashable] = tuple):
        self.name = name
        self._key_factory = key_factory
        self._data: dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._data

    def get(self, key: Hashable, default=None):
        with self._lock:
            return self._data.get(key, default)

    def put(self, key: Hashable, value):
        with self._lock:
            existing = self._data.setdefault(key, value)
        if existing != value:
            raise CacheError(f"{self.name}: conflicting values for {key!r} ({existing!r} vs {value!r}).")
        return existing

    def merge(self, other: "MemoTable | dict") -> None:
        """All-or-nothing: a single conflicting key leaves the table untouched."""
        items = other.snapshot() if isinstance(other, MemoTable) else dict(other)
        with self._lock:
            for key, value in items.items():
                existing = self._data.get(key, value)
                if existing != value:
                    raise CacheError(f"{self.name}: conflicting values for {key!r} ({existing!r} vs {value!r}).")
            for key, value in items.items():
                self._data.setdefault(key, value)

    def snapshot(self) -> dict:
        with self._lock:
            return dict(self._data)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.snapshot())

    def to_rows(self) -> list:
        return sorted([_plain(tuple(key)), _encode_value(value)] for key, value in self.snapshot().items())

    def load_rows(self, rows: list) -> None:
        decoded = {}
        for row in rows:
            if not isinstance(row, list) or len(row) != 2:
                raise CacheError(f"{self.name}: malformed row {row!r}.")
            key, value = row
            decoded[self._key_factory(_tupled(key))] = _decode_value(value)
        self.merge(decoded)


def load_cache(path: Path, tables: dict[str, MemoTable]) -> list[str]:
    """Seed the given tables from a cache file; anything unreadable is skipped with a warning."""
    path = Path(path)
    warnings: list[str] = []
    if not path.exists():
        return warnings
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        return [f"Ignoring unreadable cache {path}: {exc}"]
    if not isinstance(data, dict) or data.get("format") != CACHE_FORMAT:
        return [f"Ignoring cache {path}: unknown format {data.get('format') if isinstance(data, dict) else None!r}."]
    stored = data.get("tables") or {}
    for name, table in tables.items():
        entry = stored.get(name)
        if entry is None:
            continue
        rows = entry.get("rows") if isinstance(entry, dict) else None
        if not isinstance(rows, list) or entry.get("fp") != table_fp(name, rows):
            warnings.append(f"Ignoring table '{name}' in cache {path}: checksum mismatch.")
            continue
        scratch = MemoTable(name, table._key_factory)
        try:
            scratch.load_rows(rows)
            table.merge(scratch)
        except (CacheError, TypeError, ValueError) as exc:
            warnings.append(f"Ignoring table '{name}' in cache {path}: {exc}")
    return warnings


def save_cache(path: Path, tables: dict[str, MemoTable]) -> None:
    payload = {"format": CACHE_FORMAT, "tables": {}}
    for name, table in tables.items():
        rows = table.to_rows()
        payload["tables"][name] = {"rows": rows, "fp": table_fp(name, rows)}
    write_json_atomic(Path(path), payload)
