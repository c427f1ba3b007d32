import json

import pytest

from weylmod.errors import CacheError
from weylmod.mult import MEMO, MemoKey, mult_recursive
from weylmod.state import (
    MemoTable,
    finish_report,
    load_cache,
    read_report,
    record_checks,
    save_cache,
    start_report,
    update_report,
    write_json_atomic,
)


def test_memo_table_insert_if_absent():
    table = MemoTable("t")
    assert table.put((1,), 5) == 5
    assert table.put((1,), 5) == 5
    assert table.get((1,)) == 5
    assert (1,) in table and len(table) == 1
    with pytest.raises(CacheError):
        table.put((1,), 6)
    table.clear()
    assert len(table) == 0


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "cache" / "memo.json"
    mult_table = MemoTable("mult", MemoKey._make)
    mult_table.put(MemoKey(2, (2, 3), (0, 1)), 3)
    char_table = MemoTable("freudenthal")
    char_table.put((1,), {(1,): 1, (-1,): 1})
    save_cache(path, {"mult": mult_table, "freudenthal": char_table})

    fresh_mult, fresh_char = MemoTable("mult", MemoKey._make), MemoTable("freudenthal")
    warnings = load_cache(path, {"mult": fresh_mult, "freudenthal": fresh_char})
    assert warnings == []
    assert fresh_mult.get(MemoKey(2, (2, 3), (0, 1))) == 3
    assert isinstance(next(iter(fresh_mult)), MemoKey)
    assert fresh_char.get((1,)) == {(1,): 1, (-1,): 1}


def test_seeded_memo_is_used(tmp_path):
    path = tmp_path / "memo.json"
    mult_recursive((1, 1), (0, 0))
    save_cache(path, {"mult": MEMO})
    data = json.loads(path.read_text(encoding="utf-8"))
    assert [[2, [1, 1], [0, 0]], "2"] in data["tables"]["mult"]["rows"]


def test_corrupt_cache_is_ignored_with_warning(tmp_path):
    path = tmp_path / "memo.json"
    path.write_text("{not json", encoding="utf-8")
    table = MemoTable("mult", MemoKey._make)
    warnings = load_cache(path, {"mult": table})
    assert "unreadable" in warnings[0]
    assert len(table) == 0


def test_tampered_cache_fails_checksum(tmp_path):
    path = tmp_path / "memo.json"
    table = MemoTable("mult", MemoKey._make)
    table.put(MemoKey(1, (2,), (0,)), 1)
    save_cache(path, {"mult": table})
    data = json.loads(path.read_text(encoding="utf-8"))
    data["tables"]["mult"]["rows"][0][1] = "7"
    path.write_text(json.dumps(data), encoding="utf-8")
    fresh = MemoTable("mult", MemoKey._make)
    warnings = load_cache(path, {"mult": fresh})
    assert "checksum" in warnings[0]
    assert len(fresh) == 0


def test_unknown_format_and_missing_file(tmp_path):
    path = tmp_path / "memo.json"
    assert load_cache(path, {"mult": MemoTable("mult")}) == []
    write_json_atomic(path, {"format": "other"})
    assert "unknown format" in load_cache(path, {"mult": MemoTable("mult")})[0]


def test_report_defaults_and_update(tmp_path):
    path = tmp_path / "reports" / "verify.json"
    default = read_report(path)
    assert default["phase"] == "not_started"
    assert default["history"] == []
    running = update_report(path, phase="running")
    assert running["started_at"] is not None
    assert running["finished_at"] is None
    done = update_report(path, phase="passed")
    assert done["finished_at"] == done["updated_at"]
    assert not (tmp_path / "reports" / "verify.json.tmp").exists()


def test_report_lifecycle_keeps_history(tmp_path):
    path = tmp_path / "verify.json"
    for exit_code, failed in ((0, None), (1, "branching")):
        start_report(path, config_hash="abc", settings={"max_rank": 2})
        assert read_report(path)["finished_at"] is None
        record_checks(path, "bijection", [{"check": "bijection", "status": "passed", "cases": 3}])
        report = finish_report(path, exit_code=exit_code, failed_check=failed)
    assert report["phase"] == "failed"
    assert report["failed_check"] == "branching"
    assert [h["exit_code"] for h in report["history"]] == [0, 1]
    assert report["history"][0]["config_hash"] == "abc"


def test_foreign_report_is_reset(tmp_path):
    path = tmp_path / "verify.json"
    write_json_atomic(path, {"phase": "completed", "history": [{"exit_code": 0}]})
    report = read_report(path)
    assert report["phase"] == "not_started"
    assert report["history"] == [{"exit_code": 0}]


def test_merge_is_all_or_nothing():
    table = MemoTable("t")
    table.put((1,), 1)
    with pytest.raises(CacheError):
        table.merge({(3,): 3, (1,): 9})
    assert (3,) not in table
    assert table.get((1,)) == 1
