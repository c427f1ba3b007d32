import pytest

from weylmod.config import DEFAULT_CONFIG, config_hash, load_config
from weylmod.errors import InvalidInputError


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("WEYLMOD_CONFIG", raising=False)
    monkeypatch.delenv("WEYLMOD_CACHE", raising=False)


def test_defaults_without_file():
    cfg, warnings = load_config()
    assert cfg == DEFAULT_CONFIG
    assert warnings == []
    assert cfg is not DEFAULT_CONFIG


def test_yaml_file_deep_merges(tmp_path):
    path = tmp_path / "weylmod.yml"
    path.write_text("limits:\n  max_pbw_terms: 500\nverify:\n  max_rank: 2\n", encoding="utf-8")
    cfg, warnings = load_config(path)
    assert cfg["limits"] == {"max_basis_elements": 10**7, "max_pbw_terms": 500}
    assert cfg["verify"]["max_rank"] == 2
    assert cfg["verify"]["seed"] == DEFAULT_CONFIG["verify"]["seed"]
    assert warnings == []


def test_missing_file_is_a_warning(tmp_path):
    cfg, warnings = load_config(tmp_path / "absent.yml")
    assert cfg == DEFAULT_CONFIG
    assert "not found" in warnings[0]


def test_non_mapping_file_rejected(tmp_path):
    path = tmp_path / "list.yml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_config(path)


def test_environment_supplies_config_and_cache(tmp_path, monkeypatch):
    path = tmp_path / "env.yml"
    path.write_text("verify:\n  workers: 2\n", encoding="utf-8")
    monkeypatch.setenv("WEYLMOD_CONFIG", str(path))
    monkeypatch.setenv("WEYLMOD_CACHE", str(tmp_path / "memo.json"))
    cfg, _ = load_config()
    assert cfg["verify"]["workers"] == 2
    assert cfg["cache_path"] == str(tmp_path / "memo.json")


def test_cli_overrides_skip_unset_values():
    cfg, _ = load_config(None, {"cache_path": None, "limits": {"max_basis_elements": 99, "max_pbw_terms": None}})
    assert cfg["limits"] == {"max_basis_elements": 99, "max_pbw_terms": 10**6}
    assert cfg["cache_path"] is None


def test_invalid_limits_rejected():
    with pytest.raises(InvalidInputError):
        load_config(None, {"limits": {"max_pbw_terms": 0}})
    with pytest.raises(InvalidInputError):
        load_config(None, {"verify": {"max_coord": -1}})


def test_config_hash_is_stable():
    a, _ = load_config()
    b, _ = load_config()
    assert config_hash(a) == config_hash(b)
    c, _ = load_config(None, {"verify": {"seed": 1}})
    assert config_hash(c) != config_hash(a)
