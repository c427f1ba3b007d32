"""End-to-end reproductions of the worked rank-two and rank-four examples."""

import json

from click.testing import CliRunner

from weylmod.cli import app


def _run(*args: str) -> dict:
    result = CliRunner().invoke(app, ["--format", "json", *args])
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_rank_two_example():
    assert _run("dim", "--rank", "2", "--lambda", "2,3", "--method", "all")["value"] == "42"

    branch = _run("branch", "--rank", "2", "--lambda", "2,3")
    assert [c["hw"] for c in branch["components"]] == [[w] for w in (2, 3, 4, 5, 1, 2, 3, 4, 0, 1, 2, 3)]
    assert sum(int(c["dim"]) for c in branch["components"]) == 42

    mult = _run("mult", "--rank", "2", "--lambda", "2,3", "--mu", "0,1", "--method", "all")
    assert mult["alpha"] == [2, 2]
    assert mult["values"] == {"recursive": "3", "count": "3", "freudenthal": "3"}
    assert [t["s"] for t in mult["terms"]] == [3, 6, 9]
    assert [t["P"] for t in mult["terms"]] == [[2, 0], [2, 1], [2, 2]]


def test_rank_four_example():
    assert _run("dim", "--rank", "4", "--lambda", "1,1,1,1")["value"] == "1024"

    branch = _run("branch", "--rank", "4", "--lambda", "1,1,1,1")
    assert len(branch["components"]) == 16
    assert branch["components"][1]["hw"] == [1, 1, 2]
    assert sum(int(c["dim"]) for c in branch["components"]) == 1024

    mult = _run("mult", "--rank", "4", "--lambda", "1,1,1,1", "--mu", "0,1,1,0")
    assert mult["value"] == "8"
    assert [t["s"] for t in mult["terms"]] == [2, 3, 5, 9]
    assert [t["mult"] for t in mult["terms"]] == ["4", "2", "1", "1"]
