import copy
import json

import pytest

from weylmod.config import DEFAULT_CONFIG
from weylmod.errors import InvalidInputError
from weylmod.verify import CHECKS, run_verify, weight_sweep


def _small_config(**limits) -> dict:
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    cfg["verify"].update(max_rank=2, max_coord=1, random_words=20)
    cfg["limits"].update(limits)
    return cfg


def test_weight_sweep_runs_smallest_first():
    assert weight_sweep(2, 1) == [(0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    assert weight_sweep(2, 1, min_rank=2)[0] == (0, 0)


def test_small_sweep_passes():
    result = run_verify(_small_config())
    assert result["exit_code"] == 0
    assert result["ok"] is True
    assert [c["check"] for c in result["checks"]] == CHECKS
    assert all(c["status"] == "passed" and c["cases"] > 0 for c in result["checks"])


def test_report_records_timings_and_history(tmp_path):
    path = tmp_path / "verify.json"
    run_verify(_small_config(), checks=["bijection", "basis_cardinality"], report_path=path)
    report = json.loads(path.read_text(encoding="utf-8"))
    assert report["phase"] == "passed"
    assert report["failed_check"] is None
    assert [c["check"] for c in report["checks"]] == ["bijection", "basis_cardinality"]
    assert all("duration_seconds" in c for c in report["checks"])
    assert len(report["history"]) == 1
    assert report["history"][0]["exit_code"] == 0


def test_failure_reports_first_counterexample(monkeypatch, tmp_path):
    monkeypatch.setattr("weylmod.verify._eval_branching", lambda lam, limits: {"lambda": list(lam), "property": "forced"})
    path = tmp_path / "verify.json"
    result = run_verify(_small_config(), checks=["branching"], report_path=path)
    assert result["exit_code"] == 1
    check = result["checks"][0]
    assert check["status"] == "failed"
    assert check["cases"] == 1
    assert check["counterexample"]["lambda"] == [0, 0]
    assert len(check["counterexample"]["case_id"]) == 12
    assert json.loads(path.read_text(encoding="utf-8"))["failed_check"] == "branching"


def test_resource_cap_is_an_error():
    result = run_verify(_small_config(max_basis_elements=1), checks=["basis_cardinality"])
    assert result["exit_code"] == 3
    assert result["checks"][0]["status"] == "error"
    assert "basis element count" in result["checks"][0]["error"]


def test_unknown_check_rejected():
    with pytest.raises(InvalidInputError):
        run_verify(_small_config(), checks=["oracle_agreement"])
